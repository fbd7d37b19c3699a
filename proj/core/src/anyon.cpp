#include "qd/anyon.hpp"

#include <stdexcept>

namespace qd {

QuantumDouble::QuantumDouble(FiniteGroup g) : group_(std::move(g)) {
  const int n = group_.order();
  const auto& classes = group_.classes();

  q_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    int rep = classes[group_.class_of(x)].rep;
    for (int c = 0; c < n; ++c)
      if (group_.conjugate(c, x) == rep) {
        q_[x] = c;
        break;
      }
  }

  for (const auto& cls : classes) {
    cents_.push_back(group_.centralizer(cls.rep));
    cent_irreps_.push_back(subgroup_irreps(group_, cents_.back()));
  }

  build_catalogue();
}

void QuantumDouble::build_catalogue() {
  const auto& classes = group_.classes();
  auto push = [&](int cls, int irr, std::string name, std::string ascii) {
    AnyonInfo a;
    a.class_id = cls;
    a.irrep_id = irr;
    a.name = std::move(name);
    a.ascii = std::move(ascii);
    const Irrep& chi = cent_irreps_[cls][irr];
    a.dim = classes[cls].size() * chi.dim;
    int rep = classes[cls].rep;
    int pos = cents_[cls].index_in(rep);
    a.twist = chi.character(pos) / static_cast<double>(chi.dim);
    a.index = static_cast<int>(anyons_.size());
    anyons_.push_back(std::move(a));
  };

  if (group_.label() == "d4") {
    // Catalogue order fixed by the standard table: classes (e, r2, m, mr, r).
    // Group-level class ids: 0 = {e}, 1 = {r2}, 2 = {r,r3}, 3 = {m,mr2}, 4 = {mr,mr3}.
    push(0, 0, "O", "O");
    push(0, 1, "Σ_r", "S_r");
    push(0, 3, "Σ_mr", "S_mr");
    push(0, 2, "Σ_m", "S_m");
    push(0, 4, "Σ_ε", "S_eps");
    push(1, 0, "Õ", "Ot");
    push(1, 1, "Σ̃_r", "St_r");
    push(1, 3, "Σ̃_mr", "St_mr");
    push(1, 2, "Σ̃_m", "St_m");
    push(1, 4, "Σ̃_ε", "St_eps");
    push(3, 0, "Ψ_m", "Psi_m");
    push(3, 1, "Ψ̃_m", "Psit_m");
    push(3, 2, "Φ_m", "Phi_m");
    push(3, 3, "Φ̃_m", "Phit_m");
    push(4, 0, "Ψ_mr", "Psi_mr");
    push(4, 1, "Ψ̃_mr", "Psit_mr");
    push(4, 2, "Φ_mr", "Phi_mr");
    push(4, 3, "Φ̃_mr", "Phit_mr");
    push(2, 0, "Ψ_r", "Psi_r");
    push(2, 1, "Φ_r", "Phi_r");
    push(2, 2, "Ψ̃_r", "Psit_r");
    push(2, 3, "Φ̃_r", "Phit_r");
    return;
  }

  for (size_t c = 0; c < classes.size(); ++c)
    for (size_t i = 0; i < cent_irreps_[c].size(); ++i) {
      std::string nm =
          "(" + group_.name(classes[c].rep) + ";" + cent_irreps_[c][i].name + ")";
      push(static_cast<int>(c), static_cast<int>(i), nm, nm);
    }
}

int QuantumDouble::find(std::string_view name) const {
  for (const auto& a : anyons_)
    if (a.name == name || a.ascii == name) return a.index;
  return -1;
}

const Irrep& QuantumDouble::irrep_of(int anyon) const {
  const auto& a = anyons_[anyon];
  return cent_irreps_[a.class_id][a.irrep_id];
}

Eigen::MatrixXcd QuantumDouble::a_matrix(int anyon, int g) const {
  const auto& a = anyons_[anyon];
  const auto& cls = group_.classes()[a.class_id];
  const auto& cent = cents_[a.class_id];
  const Irrep& chi = cent_irreps_[a.class_id][a.irrep_id];
  const int nc = cls.size(), dchi = chi.dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nc * dchi, nc * dchi);
  for (int pc = 0; pc < nc; ++pc) {
    int csrc = cls.members[pc];
    int cdst = group_.conjugate(g, csrc);
    int pd = static_cast<int>(
        std::lower_bound(cls.members.begin(), cls.members.end(), cdst) - cls.members.begin());
    // n = q_{c_dst} g q_{c_src}^{-1} centralizes the class representative.
    int ncen = group_.op(group_.op(q_[cdst], g), group_.inverse(q_[csrc]));
    int pos = cent.index_in(ncen);
    if (pos < 0) throw std::logic_error("conjugation left the centralizer");
    m.block(pd * dchi, pc * dchi, dchi, dchi) = chi.mats[pos];
  }
  return m;
}

Eigen::MatrixXcd QuantumDouble::b_matrix(int anyon, int g) const {
  const auto& a = anyons_[anyon];
  const auto& cls = group_.classes()[a.class_id];
  const Irrep& chi = cent_irreps_[a.class_id][a.irrep_id];
  const int nc = cls.size(), dchi = chi.dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nc * dchi, nc * dchi);
  for (int p = 0; p < nc; ++p)
    if (cls.members[p] == g) m.block(p * dchi, p * dchi, dchi, dchi).setIdentity();
  return m;
}

cx QuantumDouble::dg_character(int anyon, int h, int g) const {
  const auto& a = anyons_[anyon];
  if (group_.class_of(h) != a.class_id) return 0;
  if (group_.op(g, h) != group_.op(h, g)) return 0;
  const auto& cent = cents_[a.class_id];
  int ncen = group_.op(group_.op(q_[h], g), group_.inverse(q_[h]));
  int pos = cent.index_in(ncen);
  if (pos < 0) throw std::logic_error("centralizer lookup failed");
  return cent_irreps_[a.class_id][a.irrep_id].character(pos);
}

std::vector<cx> QuantumDouble::character_array(int anyon) const {
  const int n = group_.order();
  std::vector<cx> out(static_cast<size_t>(n) * n, cx(0, 0));
  const auto& a = anyons_[anyon];
  for (int h : group_.classes()[a.class_id].members)
    for (int g = 0; g < n; ++g)
      if (group_.op(g, h) == group_.op(h, g)) out[h * n + g] = dg_character(anyon, h, g);
  return out;
}

cx QuantumDouble::character_inner(const std::vector<cx>& x, const std::vector<cx>& y) const {
  const int n = group_.order();
  cx acc = 0;
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g)
      if (group_.op(g, h) == group_.op(h, g)) acc += x[h * n + g] * std::conj(y[h * n + g]);
  return acc / static_cast<double>(n);
}

}  // namespace qd
