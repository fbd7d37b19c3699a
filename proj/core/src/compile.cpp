#include "qd/compile.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qd {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("compile: " + msg); }

/// Six-CNOT Toffoli in terms of CNOT, H and T; two-qubit layer depth 6.
void expand_toffoli(Circuit& out, int c1, int c2, int t) {
  out.h(t);
  out.cnot(c2, t);
  out.tdg(t);
  out.cnot(c1, t);
  out.t(t);
  out.cnot(c2, t);
  out.tdg(t);
  out.cnot(c1, t);
  out.t(c2);
  out.t(t);
  out.h(t);
  out.cnot(c1, c2);
  out.t(c1);
  out.tdg(c2);
  out.cnot(c1, c2);
}

/// Rewrites Toffoli and CY into CNOT-level gates; leaves the rest alone.
Circuit lower_gates(const Circuit& ir) {
  Circuit out(ir.qubits);
  for (const Gate& g : ir.gates) {
    switch (g.kind) {
      case GateKind::Toffoli:
        expand_toffoli(out, g.q[0], g.q[1], g.q[2]);
        break;
      case GateKind::CY:
        out.sdg(g.q[1]);
        out.cnot(g.q[0], g.q[1]);
        out.s(g.q[1]);
        break;
      default:
        out.gates.push_back(g);
    }
  }
  return out;
}

/// Rewrites CNOT and SWAP into CZ plus Hadamards. Expects lower_gates output.
Circuit lower_cz(const Circuit& c) {
  Circuit out(c.qubits);
  auto cnot = [&out](int ctl, int tgt) {
    out.h(tgt);
    out.cz(ctl, tgt);
    out.h(tgt);
  };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::One:
      case GateKind::CZ:
        out.gates.push_back(g);
        break;
      case GateKind::CNot:
        cnot(g.q[0], g.q[1]);
        break;
      case GateKind::Swap:
        cnot(g.q[0], g.q[1]);
        cnot(g.q[1], g.q[0]);
        cnot(g.q[0], g.q[1]);
        break;
      default:
        fail("unexpected gate kind in native lowering");
    }
  }
  return out;
}

void check_layout(const DeviceModel& dev, const Layout& lay, int wires) {
  if (static_cast<int>(lay.node.size()) != wires) fail("layout does not cover the circuit wires");
  std::vector<int> seen;
  for (int n : lay.node) {
    if (!dev.in_range(n)) fail("layout node out of the device grid");
    seen.push_back(n);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail("layout assigns two wires to one node");
}

}  // namespace

bool DeviceModel::adjacent(int a, int b) const {
  if (!in_range(a) || !in_range(b)) return false;
  return std::abs(row(a) - row(b)) + std::abs(col(a) - col(b)) == 1;
}

std::pair<DeviceModel, Layout> parse_placement(std::istream& in) {
  DeviceModel dev;
  Layout lay;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "grid") {
      if (!(ls >> dev.rows >> dev.cols) || dev.rows <= 0 || dev.cols <= 0)
        fail("bad grid line " + std::to_string(lineno));
    } else if (head.size() > 1 && head[0] == 'q') {
      int wire = -1, r = -1, c = -1;
      try {
        wire = std::stoi(head.substr(1));
      } catch (const std::exception&) {
        fail("bad wire name " + head);
      }
      if (!(ls >> r >> c)) fail("bad placement line " + std::to_string(lineno));
      if (dev.nodes() == 0) fail("grid line must precede placements");
      if (wire < 0 || r < 0 || r >= dev.rows || c < 0 || c >= dev.cols)
        fail("placement outside the grid at line " + std::to_string(lineno));
      if (wire >= static_cast<int>(lay.node.size())) lay.node.resize(wire + 1, -1);
      if (lay.node[wire] >= 0) fail("duplicate placement for " + head);
      lay.node[wire] = dev.node(r, c);
    } else {
      fail("unrecognized placement line " + std::to_string(lineno));
    }
  }
  for (std::size_t w = 0; w < lay.node.size(); ++w)
    if (lay.node[w] < 0) fail("wire q" + std::to_string(w) + " has no placement");
  check_layout(dev, lay, static_cast<int>(lay.node.size()));
  return {dev, lay};
}

Circuit lower_to_native(const Circuit& ir) { return lower_cz(lower_gates(ir)); }

CompiledCircuit compile_to_device(const Circuit& ir, const DeviceModel& dev, const Layout& lay) {
  const int n = ir.qubits;
  check_layout(dev, lay, n);

  // Wire w is pinned to grid node lay.node[w]; logical qubit l starts on
  // wire l and wanders under routing swaps.
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && dev.adjacent(lay.node[a], lay.node[b])) adj[a].push_back(b);
  for (auto& nb : adj)
    std::sort(nb.begin(), nb.end(),
              [&lay](int a, int b) { return lay.node[a] < lay.node[b]; });

  std::vector<int> cur(n), at(n);  // cur: logical -> wire, at: wire -> logical
  std::iota(cur.begin(), cur.end(), 0);
  std::iota(at.begin(), at.end(), 0);

  Circuit routed(n);
  int swaps = 0;
  auto swap_wires = [&](int wa, int wb) {
    routed.swap(wa, wb);
    std::swap(at[wa], at[wb]);
    cur[at[wa]] = wa;
    cur[at[wb]] = wb;
    ++swaps;
  };
  auto step_toward = [&](int la, int lb) {
    // One hop of la along a shortest wire path to lb (ties broken by node id).
    const int src = cur[la], dst = cur[lb];
    std::vector<int> parent(n, -1);
    std::deque<int> queue{src};
    parent[src] = src;
    while (!queue.empty()) {
      const int w = queue.front();
      queue.pop_front();
      if (w == dst) break;
      for (int nb : adj[w])
        if (parent[nb] < 0) {
          parent[nb] = w;
          queue.push_back(nb);
        }
    }
    if (parent[dst] < 0) fail("operands lie in disconnected parts of the layout");
    int hop = dst;
    while (parent[hop] != src) hop = parent[hop];
    swap_wires(src, hop);
  };

  const Circuit pre = lower_gates(ir);
  for (const Gate& g : pre.gates) {
    if (g.kind == GateKind::One) {
      Gate m = g;
      m.q[0] = cur[g.q[0]];
      routed.gates.push_back(std::move(m));
      continue;
    }
    const int la = g.q[0], lb = g.q[1];
    while (!dev.adjacent(lay.node[cur[la]], lay.node[cur[lb]])) step_toward(la, lb);
    Gate m = g;
    m.q[0] = cur[la];
    m.q[1] = cur[lb];
    routed.gates.push_back(std::move(m));
  }

  CompiledCircuit cc;
  cc.native = lower_cz(routed);
  cc.device = dev;
  cc.nodes = lay.node;
  cc.final = cur;
  cc.toffoli_pre = ir.count(GateKind::Toffoli);
  cc.swaps = swaps;
  return cc;
}

DepthReport depth_report(const CompiledCircuit& cc) {
  DepthReport r;
  r.depth = circuit_depth(cc.native);
  r.two_qubit_depth = two_qubit_depth(cc.native);
  r.two_qubit_count = cc.native.two_qubit_count();
  r.toffoli_pre = cc.toffoli_pre;
  r.swaps = cc.swaps;
  return r;
}

Eigen::MatrixXcd wire_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = 0;
    for (int l = 0; l < n; ++l) y |= ((x >> l) & 1) << perm[l];
    p(y, x) = 1.0;
  }
  return p;
}

double phase_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) fail("phase_distance shape mismatch");
  Eigen::Index i = 0, j = 0;
  v.cwiseAbs().maxCoeff(&i, &j);
  if (std::abs(v(i, j)) < 1e-12) return (u - v).cwiseAbs().maxCoeff();
  cx ph = u(i, j) / v(i, j);
  const double mag = std::abs(ph);
  ph = (mag < 1e-12) ? cx(1, 0) : ph / mag;
  return (u - ph * v).cwiseAbs().maxCoeff();
}

namespace {

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::One: return "U";
    case GateKind::CNot: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CY: return "CY";
    case GateKind::Toffoli: return "CCX";
    case GateKind::Swap: return "SWAP";
  }
  return "?";
}

}  // namespace

void dump_circuit(std::ostream& os, const Circuit& c) {
  os << "wires " << c.qubits << "\n";
  for (const Gate& g : c.gates) {
    os << (g.kind == GateKind::One ? g.label : kind_name(g.kind));
    for (int q : g.q) os << " q" << q;
    os << "\n";
  }
}

void dump_compiled(std::ostream& os, const CompiledCircuit& cc) {
  os << "grid " << cc.device.rows << " " << cc.device.cols << "\n";
  for (std::size_t w = 0; w < cc.nodes.size(); ++w)
    os << "q" << w << " " << cc.device.row(cc.nodes[w]) << " " << cc.device.col(cc.nodes[w])
       << "\n";
  for (const Gate& g : cc.native.gates) {
    os << (g.kind == GateKind::One ? g.label : kind_name(g.kind));
    for (int q : g.q) {
      const int node = cc.nodes[q];
      os << " (" << cc.device.row(node) << "," << cc.device.col(node) << ")";
    }
    os << "\n";
  }
}

// --- protocol circuits ------------------------------------------------------

namespace {

bool ladder_shape(const Lattice& l) {
  const int nv = l.vertex_count();
  if (nv < 2 || l.edge_count() != 2 * (nv - 1)) return false;
  for (int k = 0; k + 1 < nv; ++k) {
    const LatticeEdge& t = l.edge(2 * k);
    const LatticeEdge& b = l.edge(2 * k + 1);
    if (t.src != k || t.dst != k + 1 || b.src != k + 1 || b.dst != k) return false;
  }
  return true;
}

bool planar_shape(const Lattice& l) {
  if (l.vertex_count() != 3 || l.edge_count() != 4) return false;
  static constexpr int ends[4][2] = {{2, 0}, {0, 1}, {1, 2}, {2, 1}};
  for (int e = 0; e < 4; ++e)
    if (l.edge(e).src != ends[e][0] || l.edge(e).dst != ends[e][1]) return false;
  return true;
}

}  // namespace

Circuit ground_state_circuit(const FiniteGroup& g, const Lattice& l) {
  if (g.order() != 8) fail("qubit circuits cover the dihedral-8 model only");
  const int ne = l.edge_count();
  Circuit c(3 * ne);
  auto wire = [](int e, int j) { return 3 * e + j; };
  auto copy_onto = [&](int src, int dst) {
    for (int j = 0; j < 3; ++j) c.h(wire(src, j));
    for (int j = 0; j < 3; ++j) c.cnot(wire(src, j), wire(dst, j));
  };
  if (ladder_shape(l)) {
    // Each square constrains its rails to equal values; a Hadamard rung and a
    // transversal copy prepare sum_x |t = x, b = x> per segment.
    for (int k = 0; 2 * k + 1 < ne; ++k) copy_onto(2 * k + 1, 2 * k);
  } else if (planar_shape(l)) {
    copy_onto(0, 1);
    copy_onto(3, 2);
    const std::array<int, 6> wires{wire(1, 0), wire(1, 1), wire(1, 2),
                                   wire(2, 0), wire(2, 1), wire(2, 2)};
    append_mapped(c, emit_controlled_mult(g, 1, MultDomain::Full), wires);
  } else {
    fail("no ground-state circuit for this lattice");
  }
  return c;
}

namespace {

struct CircuitRibbon {
  int anyon = 0;
  int back_wire = -1;   // -1 for one-dimensional internal spaces
  int front_wire = -1;
  Corner back{}, front{};
};

/// Shared emitter state for assembling a protocol onto qubit wires.
struct Assembler {
  const QuantumDouble& qd;
  const FiniteGroup& g;
  const Lattice& l;
  Circuit& c;

  std::array<int, 3> edge_wires(int e) const { return {3 * e, 3 * e + 1, 3 * e + 2}; }

  void constant_mult(int elem, int edge) {
    // Only central elements occur as one-dimensional flux labels.
    if (elem == g.identity()) return;
    if (elem == g.op(g.index_of("r"), g.index_of("r")))
      c.x(edge_wires(edge)[2]);
    else
      fail("unsupported constant multiplication");
  }

  void step(const RibbonStep& s, const CircuitRibbon& rb, bool back_end) {
    const QuantumDouble::AnyonInfo& info = qd.anyon(rb.anyon);
    const ConjugacyClass& cls = g.classes()[info.class_id];
    const int anc = back_end ? rb.back_wire : rb.front_wire;
    if (!s.type_two) {
      const int variant = s.fwd ? (s.depart_after ? 1 : 2) : (s.depart_after ? 4 : 3);
      if (info.dim == 1) {
        const int elem = cls.members[0];
        constant_mult(variant <= 2 ? elem : g.inverse(elem), s.edge);
        return;
      }
      const MultDomain dom = domain_for(g, cls.members);
      const auto ew = edge_wires(s.edge);
      const std::array<int, 4> wires{anc, ew[0], ew[1], ew[2]};
      append_mapped(c, emit_controlled_mult(g, variant, dom), wires);
      return;
    }
    const int inversions = (s.crossed.fwd ? 1 : 0) + (s.to_before ? 1 : 0);
    const bool plain_arg = inversions % 2 == 0;
    const int variant = back_end ? (plain_arg ? 4 : 3) : (plain_arg ? 1 : 2);
    const Circuit conj = emit_generalized_conjugation(qd, rb.anyon, variant);
    const auto ew = edge_wires(s.crossed.edge);
    if (info.dim == 1) {
      append_mapped(c, conj, ew);
    } else {
      const std::array<int, 4> wires{ew[0], ew[1], ew[2], anc};
      append_mapped(c, conj, wires);
    }
  }

  void apply_front(const CircuitRibbon& rb, const RibbonPath& path) {
    for (const RibbonStep& s : path.steps()) step(s, rb, false);
  }
  void apply_back(const CircuitRibbon& rb, const RibbonPath& path) {
    const auto& st = path.steps();
    for (auto it = st.rbegin(); it != st.rend(); ++it) step(*it, rb, true);
  }
};

}  // namespace

ProtocolCircuit protocol_circuit(const QuantumDouble& qd, const Lattice& l,
                                 const ProtocolSpec& spec) {
  const FiniteGroup& g = qd.group();
  const int anyon = qd.find(spec.anyon);
  if (qd.anyon(anyon).dim > 2) fail("internal space does not fit one qubit");
  const int ne = l.edge_count();

  int pairs = 0;
  for (const auto& act : spec.actions)
    if (act.kind == RibbonAction::Kind::create && qd.anyon(anyon).dim == 2) ++pairs;

  ProtocolCircuit pc;
  pc.flux_site = spec.flux_site;
  pc.subgroup = subgroup_from_gens(g, spec.subgroup_gens);
  pc.probe0 = 3 * ne + 2 * pairs;
  pc.circuit = ground_state_circuit(g, l);
  pc.circuit.qubits = pc.probe0 + 2;

  Circuit& c = pc.circuit;
  Assembler as{qd, g, l, c};
  std::vector<CircuitRibbon> ribbons;
  int next_anc = 3 * ne;
  for (const auto& act : spec.actions) {
    switch (act.kind) {
      case RibbonAction::Kind::create: {
        if (act.ribbon != static_cast<int>(ribbons.size()))
          fail("ribbons must be created in order");
        const auto path = RibbonPath::parse(l, act.start, act.moves);
        CircuitRibbon rb;
        rb.anyon = anyon;
        rb.back = path.back();
        rb.front = path.front();
        if (qd.anyon(anyon).dim == 2) {
          rb.back_wire = next_anc++;
          rb.front_wire = next_anc++;
          c.h(rb.back_wire);
          c.cnot(rb.back_wire, rb.front_wire);
        }
        as.apply_front(rb, path);
        ribbons.push_back(rb);
        break;
      }
      case RibbonAction::Kind::extend_front: {
        CircuitRibbon& rb = ribbons.at(act.ribbon);
        const auto path = RibbonPath::parse(l, act.start, act.moves);
        if (!(path.back() == rb.front)) fail("front extension does not start at the front corner");
        as.apply_front(rb, path);
        rb.front = path.front();
        break;
      }
      case RibbonAction::Kind::extend_back: {
        CircuitRibbon& rb = ribbons.at(act.ribbon);
        const auto path = RibbonPath::parse(l, act.start, act.moves);
        if (!(path.front() == rb.back)) fail("rear extension does not end at the rear corner");
        as.apply_back(rb, path);
        rb.back = path.back();
        break;
      }
      case RibbonAction::Kind::bell: {
        const CircuitRibbon& rb = ribbons.at(act.ribbon);
        if (rb.back_wire >= 0) {
          c.cnot(rb.back_wire, rb.front_wire);
          c.h(rb.back_wire);
          pc.bell_pairs.push_back({rb.back_wire, rb.front_wire});
        }
        break;
      }
    }
  }

  // Charge probe: uniform subgroup ancilla, controlled holonomy around the
  // face, then the character-basis rotation.
  const MultDomain pd = domain_for(g, pc.subgroup.members);
  c.h(pc.probe0);
  c.h(pc.probe0 + 1);
  const Face& f = l.face(l.face_index(spec.probe_face));
  for (int i = 0; i < f.size(); ++i) {
    const auto ew = as.edge_wires(f.boundary[i].edge);
    const std::array<int, 5> wires{pc.probe0, pc.probe0 + 1, ew[0], ew[1], ew[2]};
    append_mapped(c, emit_controlled_mult(g, f.aligned(i) ? 1 : 4, pd), wires);
  }
  {
    const std::array<int, 2> pw{pc.probe0, pc.probe0 + 1};
    append_mapped(c, emit_decoupling_unitary(g, pc.subgroup), pw);
  }
  pc.irrep_of_code = decoupling_irrep_of_code(g, pc.subgroup);
  return pc;
}

// Both tables come from a local search over wire-to-node assignments that
// minimizes the coupler depth produced by the greedy router.

std::pair<DeviceModel, Layout> fusion_ladder_placement() {
  DeviceModel dev{4, 6};
  Layout lay;
  const int coords[18][2] = {
      {2, 1}, {3, 3}, {0, 3},            // t1
      {2, 2}, {3, 2}, {1, 2},            // b1
      {1, 5}, {0, 0}, {2, 5},            // t2
      {1, 4}, {0, 1}, {3, 5},            // b2
      {1, 3}, {0, 2},                    // ancilla pair 0
      {2, 4}, {3, 4},                    // ancilla pair 1
      {3, 1}, {1, 1},                    // probe pair
  };
  for (auto& rc : coords) lay.node.push_back(dev.node(rc[0], rc[1]));
  return {dev, lay};
}

std::pair<DeviceModel, Layout> fusion_planar_placement() {
  DeviceModel dev{5, 4};
  Layout lay;
  const int coords[18][2] = {
      {4, 1}, {0, 3}, {2, 1},            // e1
      {4, 0}, {0, 1}, {1, 1},            // e2
      {3, 2}, {2, 3}, {1, 2},            // e3
      {2, 2}, {4, 3}, {3, 3},            // e4
      {3, 0}, {0, 0},                    // ancilla pair 0
      {1, 3}, {0, 2},                    // ancilla pair 1
      {1, 0}, {2, 0},                    // probe pair
  };
  for (auto& rc : coords) lay.node.push_back(dev.node(rc[0], rc[1]));
  return {dev, lay};
}

}  // namespace qd
