#include "qd/charge.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qd {

int attach_charge_probe(QState& psi, const FiniteGroup& g, const Lattice& l, int face,
                        const Subgroup& h) {
  const int hn = h.order();
  const int anc = psi.num_regs();
  psi.insert_reg(anc, hn, 0);

  // Uniform superposition over H.
  Eigen::MatrixXcd dft(hn, hn);
  const double w = 2.0 * EIGEN_PI / hn;
  for (int j = 0; j < hn; ++j)
    for (int k = 0; k < hn; ++k) dft(j, k) = cx(std::cos(w * j * k), std::sin(w * j * k));
  dft /= std::sqrt(static_cast<double>(hn));
  psi.apply_unary(anc, dft);

  // Controlled holonomy multiplication: aligned boundary darts take h on the
  // left, anti-aligned ones h^-1 on the right. An edge bordering the face
  // twice composes both visits.
  const Face& f = l.face(face);
  std::vector<int> edges;
  std::vector<std::array<int, 2>> mults;  // (left count, right count) per edge
  for (int i = 0; i < f.size(); ++i) {
    const int e = f.boundary[i].edge;
    int pos = -1;
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (edges[k] == e) pos = static_cast<int>(k);
    if (pos < 0) {
      edges.push_back(e);
      mults.push_back({0, 0});
      pos = static_cast<int>(edges.size()) - 1;
    }
    ++mults[pos][f.aligned(i) ? 0 : 1];
  }
  std::vector<int> regs;
  regs.push_back(anc);
  for (int e : edges) regs.push_back(e);
  psi.apply_multi_map(regs, [&](std::span<int> d) {
    const int hv = h.members[d[0]];
    const int hi = g.inverse(hv);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      int x = d[k + 1];
      for (int c = 0; c < mults[k][0]; ++c) x = g.op(hv, x);
      for (int c = 0; c < mults[k][1]; ++c) x = g.op(x, hi);
      d[k + 1] = x;
    }
  });

  // Character-basis rotation.
  const std::vector<Irrep> irr = subgroup_irreps(g, h);
  if (static_cast<int>(irr.size()) != hn)
    throw std::runtime_error("charge probe needs an abelian subgroup");
  Eigen::MatrixXcd ua(hn, hn);
  for (int c = 0; c < hn; ++c)
    for (int j = 0; j < hn; ++j) ua(c, j) = std::conj(irr[c].character(j)) / std::sqrt(double(hn));
  psi.apply_unary(anc, ua);
  return anc;
}

Eigen::MatrixXd probe_word_joint(const QState& psi, const FiniteGroup& g, const Lattice& l, int anc,
                                 Corner site) {
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(psi.dim(anc), g.order());
  const int ne = l.edge_count();
  std::vector<int> digs(ne);
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const double p = std::norm(psi.amps()[idx]);
    if (p == 0.0) continue;
    for (int e = 0; e < ne; ++e) digs[e] = psi.digit(idx, e);
    joint(psi.digit(idx, anc), word_value(g, l, site, digs)) += p;
  }
  return joint;
}

std::vector<int> consistent_anyons(const QuantumDouble& qd, const Subgroup& h, int eta, int w) {
  const FiniteGroup& g = qd.group();
  for (int hv : h.members)
    if (g.op(hv, w) != g.op(w, hv)) return {};
  const std::vector<Irrep> irr = subgroup_irreps(g, h);
  std::vector<int> out;
  for (int a = 0; a < qd.num_anyons(); ++a) {
    cx overlap = 0;
    for (int j = 0; j < h.order(); ++j)
      overlap += std::conj(irr[eta].character(j)) * qd.dg_character(a, w, h.members[j]);
    if (std::abs(overlap) > 1e-9) out.push_back(a);
  }
  return out;
}

}  // namespace qd
