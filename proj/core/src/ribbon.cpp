#include "qd/ribbon.hpp"

#include <sstream>
#include <stdexcept>

namespace qd {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("ribbon: " + msg); }

Dart incident_dart(const Lattice& l, int edge, int vertex) {
  const LatticeEdge& e = l.edge(edge);
  if (e.src == vertex) return {edge, true};
  if (e.dst == vertex) return {edge, false};
  fail("edge " + e.name + " is not incident to " + l.vertex_name(vertex));
}

}  // namespace

RibbonPath RibbonPath::trace(const Lattice& l, Corner start, std::span<const RibbonMove> moves) {
  if (start.vertex < 0 || start.vertex >= l.vertex_count() || start.slot < 0 ||
      start.slot >= l.degree(start.vertex))
    fail("start corner out of range");
  RibbonPath p;
  p.corners_.push_back(start);
  Corner cur = start;
  for (const RibbonMove& mv : moves) {
    int e = l.edge_index(mv.edge);
    if (e < 0) fail("unknown edge " + mv.edge);
    const int v = cur.vertex;
    const int deg = l.degree(v);
    const int k = cur.slot;
    Dart d = incident_dart(l, e, v);
    const int j = l.rotation_slot(d);
    RibbonStep s;
    s.from = cur;
    if (mv.kind == RibbonMove::Kind::travel) {
      s.type_two = false;
      s.edge = e;
      s.fwd = d.fwd;
      if (j == k)
        s.depart_after = true;
      else if (j == (k + 1) % deg)
        s.depart_after = false;
      else
        fail("edge " + mv.edge + " does not flank the current corner");
      Dart rd = l.reverse(d);
      const int w = l.dart_origin(rd);
      const int dw = l.degree(w);
      const int jw = l.rotation_slot(rd);
      // Strip side is preserved: departing after the dart lands before its
      // reverse, and vice versa.
      cur = {w, s.depart_after ? (jw - 1 + dw) % dw : jw};
    } else {
      s.type_two = true;
      s.vertex = v;
      s.crossed = d;
      if (j == k) {
        s.to_before = true;
        cur = {v, (k - 1 + deg) % deg};
      } else if (j == (k + 1) % deg) {
        s.to_before = false;
        cur = {v, j};
      } else {
        fail("dart " + mv.edge + " does not flank the current corner");
      }
    }
    s.to = cur;
    p.corners_.push_back(cur);
    p.steps_.push_back(s);
  }
  return p;
}

RibbonPath RibbonPath::parse(const Lattice& l, Corner start, std::string_view spec) {
  std::vector<RibbonMove> moves;
  std::istringstream in{std::string(spec)};
  for (std::string tok; in >> tok;) {
    if (tok.size() < 3 || tok[1] != ':') fail("bad move token " + tok + " (want I:edge or X:edge)");
    RibbonMove mv;
    if (tok[0] == 'I')
      mv.kind = RibbonMove::Kind::travel;
    else if (tok[0] == 'X')
      mv.kind = RibbonMove::Kind::cross;
    else
      fail("bad move kind in " + tok);
    mv.edge = tok.substr(2);
    moves.push_back(std::move(mv));
  }
  return trace(l, start, moves);
}

RibbonEngine::RibbonEngine(const QuantumDouble& qd, const Lattice& l) : qd_(&qd), l_(&l) {}

RibbonRep RibbonEngine::rep(int anyon) const {
  const QuantumDouble::AnyonInfo& info = qd_->anyon(anyon);
  const ConjugacyClass& cls = qd_->group().classes()[info.class_id];
  const int dchi = qd_->irrep_of(anyon).dim;
  RibbonRep r;
  for (int m : cls.members)
    for (int i = 0; i < dchi; ++i) r.labels.push_back(m);
  const QuantumDouble* qd = qd_;
  r.a = [qd, anyon](int h) { return qd->a_matrix(anyon, h); };
  return r;
}

RibbonHandle RibbonEngine::create_pair(QState& psi, int anyon, const RibbonPath& path) const {
  const int d = qd_->anyon(anyon).dim;
  auto [rb, rf] = attach_entangled(psi, d);
  RibbonHandle h;
  h.anyon = anyon;
  h.anc_back = rb;
  h.anc_front = rf;
  h.back = path.back();
  h.front = path.front();
  apply_front(psi, rep(anyon), path, h.anc_front);
  return h;
}

void RibbonEngine::extend_front(QState& psi, RibbonHandle& h, const RibbonPath& ext,
                                const RibbonControl& ctrl) const {
  if (!(ext.back() == h.front)) fail("front extension does not start at the front corner");
  apply_front(psi, rep(h.anyon), ext, h.anc_front, ctrl);
  h.front = ext.front();
}

void RibbonEngine::extend_back(QState& psi, RibbonHandle& h, const RibbonPath& ext,
                               const RibbonControl& ctrl) const {
  if (!(ext.front() == h.back)) fail("rear extension does not end at the rear corner");
  apply_back(psi, rep(h.anyon), ext, h.anc_back, ctrl);
  h.back = ext.back();
}

double RibbonEngine::finalize(QState& psi, RibbonHandle& h) const {
  double p = psi.bell_contract(h.anc_back, h.anc_front);
  h.anc_back = h.anc_front = -1;
  return p;
}

std::pair<int, int> RibbonEngine::attach_entangled(QState& psi, int dim) {
  const int n = psi.num_regs();
  psi.insert_reg(n, dim, 0);
  psi.insert_reg(n + 1, dim, 0);
  Eigen::MatrixXcd dft(dim, dim);
  const double w = 2.0 * EIGEN_PI / dim;
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) dft(j, k) = cx(std::cos(w * j * k), std::sin(w * j * k));
  dft /= std::sqrt(static_cast<double>(dim));
  psi.apply_unary(n, dft);
  std::vector<std::vector<int>> copy(dim, std::vector<int>(dim));
  for (int c = 0; c < dim; ++c)
    for (int x = 0; x < dim; ++x) copy[c][x] = (x + c) % dim;
  psi.apply_controlled_map(n, n + 1, copy);
  return {n, n + 1};
}

double RibbonEngine::closed_loop(QState& psi, int anyon, const RibbonPath& loop,
                                 const RibbonControl& ctrl) const {
  if (!loop.closed()) fail("closed_loop needs a closed path");
  const int d = qd_->anyon(anyon).dim;
  auto [rb, rf] = attach_entangled(psi, d);
  apply_front(psi, rep(anyon), loop, rf, ctrl);
  return psi.bell_contract(rb, rf);
}

void RibbonEngine::apply_front(QState& psi, const RibbonRep& rep, const RibbonPath& path, int anc,
                               const RibbonControl& ctrl) const {
  if (psi.dim(anc) != rep.dim()) fail("ancilla dimension does not match the rep");
  if (ctrl.ref && ctrl.ref->dim() != rep.dim())
    fail("reference rep dimension does not match the ancilla");
  for (const RibbonStep& s : path.steps()) apply_step(psi, rep, s, anc, false, ctrl);
}

void RibbonEngine::apply_back(QState& psi, const RibbonRep& rep, const RibbonPath& path, int anc,
                              const RibbonControl& ctrl) const {
  if (psi.dim(anc) != rep.dim()) fail("ancilla dimension does not match the rep");
  if (ctrl.ref && ctrl.ref->dim() != rep.dim())
    fail("reference rep dimension does not match the ancilla");
  const std::vector<RibbonStep>& st = path.steps();
  for (auto it = st.rbegin(); it != st.rend(); ++it) apply_step(psi, rep, *it, anc, true, ctrl);
}

void RibbonEngine::apply_step(QState& psi, const RibbonRep& rep, const RibbonStep& s, int anc,
                              bool back_end, const RibbonControl& ctrl) const {
  const FiniteGroup& g = qd_->group();
  const int n = g.order();
  const int d = rep.dim();
  const bool dart_fwd = s.type_two ? s.crossed.fwd : s.fwd;
  const bool side = s.type_two ? s.to_before : s.depart_after;
  coverage_[(back_end ? 1 : 0) | (s.type_two ? 2 : 0) | (dart_fwd ? 4 : 0) | (side ? 8 : 0)]++;

  if (!s.type_two) {
    // Type I: the edge value is multiplied by the ancilla's flux label. The
    // side of the multiplication follows the dart direction and strip side
    // only; both ends use the same side, each conditioned on its own ancilla.
    auto edge_map = [&](const RibbonRep& r, int nu) {
      std::vector<int> map(n);
      const int c = r.labels[nu];
      const int ci = g.inverse(c);
      for (int x = 0; x < n; ++x) {
        int y;
        if (s.fwd && s.depart_after)
          y = g.op(c, x);
        else if (s.fwd && !s.depart_after)
          y = g.op(x, c);
        else if (!s.fwd && !s.depart_after)
          y = g.op(ci, x);
        else
          y = g.op(x, ci);
        map[x] = y;
      }
      return map;
    };
    if (ctrl.control < 0) {
      std::vector<std::vector<int>> maps;
      maps.reserve(d);
      for (int nu = 0; nu < d; ++nu) maps.push_back(edge_map(rep, nu));
      psi.apply_controlled_map(anc, s.edge, maps);
    } else {
      std::array<int, 3> regs{ctrl.control, anc, s.edge};
      std::vector<std::vector<int>> on, off;
      for (int nu = 0; nu < d; ++nu) {
        on.push_back(edge_map(rep, nu));
        if (ctrl.ref) off.push_back(edge_map(*ctrl.ref, nu));
      }
      psi.apply_multi_map(regs, [&](std::span<int> digs) {
        if (digs[0] == 1)
          digs[2] = on[digs[1]][digs[2]];
        else if (ctrl.ref)
          digs[2] = off[digs[1]][digs[2]];
      });
    }
    return;
  }

  // Type II: conjugate the ancilla through the charge action of the crossed
  // edge's value. Crossing toward the gap before the dart inverts the
  // argument; the front end applies the transposed matrix, the rear end the
  // plain one, with the same argument either way.
  auto xval = [&](int gv) { return s.crossed.fwd ? g.inverse(gv) : gv; };
  auto matrix = [&](const RibbonRep& r, int gv) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd m = r.a(s.to_before ? g.inverse(xval(gv)) : xval(gv));
    return back_end ? m : m.transpose();
  };
  const int ce = s.crossed.edge;
  if (ctrl.control < 0) {
    psi.apply_controlled_unitary(ce, anc,
                                 [&](int gv) -> Eigen::MatrixXcd { return matrix(rep, gv); });
  } else {
    std::array<int, 2> ctrls{ctrl.control, ce};
    psi.apply_controlled_unitary(
        std::span<const int>(ctrls), anc,
        [&](std::span<const int> digs) -> Eigen::MatrixXcd {
          if (digs[0] == 1) return matrix(rep, digs[1]);
          if (ctrl.ref) return matrix(*ctrl.ref, digs[1]);
          return Eigen::MatrixXcd::Identity(d, d);
        });
  }
}

void RibbonEngine::shift_for_removed(RibbonHandle& h, std::span<const int> removed) {
  for (int* reg : {&h.anc_back, &h.anc_front}) {
    if (*reg < 0) continue;
    int shift = 0;
    for (int r : removed)
      if (r < *reg) ++shift;
    *reg -= shift;
  }
}

}  // namespace qd
