#include "qd/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qd {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("circuit: " + msg); }

constexpr double kPi = 3.14159265358979323846;

int arity(GateKind k) {
  switch (k) {
    case GateKind::One:
      return 1;
    case GateKind::CNot:
    case GateKind::CZ:
    case GateKind::CY:
    case GateKind::Swap:
      return 2;
    case GateKind::Toffoli:
      return 3;
  }
  return 0;
}

Eigen::Matrix2cd mat2(cx a, cx b, cx c, cx d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return m;
}

bool close(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return (a - b).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

void Circuit::one(int t, const Eigen::Matrix2cd& u, std::string label) {
  if (t < 0 || t >= qubits) fail("wire out of range");
  gates.push_back({GateKind::One, {t}, u, std::move(label)});
}

void Circuit::h(int t) { one(t, mat2(1, 1, 1, -1) / std::sqrt(2.0), "H"); }
void Circuit::x(int t) { one(t, mat2(0, 1, 1, 0), "X"); }
void Circuit::z(int t) { one(t, mat2(1, 0, 0, -1), "Z"); }
void Circuit::s(int t) { one(t, mat2(1, 0, 0, cx(0, 1)), "S"); }
void Circuit::sdg(int t) { one(t, mat2(1, 0, 0, cx(0, -1)), "Sdg"); }
void Circuit::t(int qw) { phase(qw, kPi / 4); }
void Circuit::tdg(int qw) { phase(qw, -kPi / 4); }

void Circuit::phase(int t, double theta) {
  std::string label = "P";
  const double quarters = theta / (kPi / 4);
  const double near = std::round(quarters);
  if (std::abs(quarters - near) < 1e-9) {
    switch (((static_cast<int>(near) % 8) + 8) % 8) {
      case 0: return;  // identity
      case 1: label = "T"; break;
      case 2: label = "S"; break;
      case 4: label = "Z"; break;
      case 6: label = "Sdg"; break;
      case 7: label = "Tdg"; break;
      default: break;
    }
  }
  one(t, mat2(1, 0, 0, std::polar(1.0, theta)), label);
}

void Circuit::cnot(int c, int t) {
  if (c == t || c < 0 || t < 0 || c >= qubits || t >= qubits) fail("bad CNOT operands");
  gates.push_back({GateKind::CNot, {c, t}, {}, {}});
}

void Circuit::cz(int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= qubits || b >= qubits) fail("bad CZ operands");
  gates.push_back({GateKind::CZ, {a, b}, {}, {}});
}

void Circuit::cy(int c, int t) {
  if (c == t || c < 0 || t < 0 || c >= qubits || t >= qubits) fail("bad CY operands");
  gates.push_back({GateKind::CY, {c, t}, {}, {}});
}

void Circuit::toffoli(int c1, int c2, int t) {
  if (c1 == c2 || c1 == t || c2 == t) fail("bad Toffoli operands");
  if (c1 < 0 || c2 < 0 || t < 0 || c1 >= qubits || c2 >= qubits || t >= qubits)
    fail("bad Toffoli operands");
  gates.push_back({GateKind::Toffoli, {c1, c2, t}, {}, {}});
}

void Circuit::swap(int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= qubits || b >= qubits) fail("bad SWAP operands");
  gates.push_back({GateKind::Swap, {a, b}, {}, {}});
}

void Circuit::cphase(int c, int t, double theta) {
  phase(c, theta / 2);
  phase(t, theta / 2);
  cnot(c, t);
  phase(t, -theta / 2);
  cnot(c, t);
}

void Circuit::controlled(int c, int t, const Eigen::Matrix2cd& u) {
  const Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd px = mat2(0, 1, 1, 0);
  const Eigen::Matrix2cd py = mat2(0, cx(0, -1), cx(0, 1), 0);
  const Eigen::Matrix2cd pz = mat2(1, 0, 0, -1);

  // Phase times a Pauli: the phase rides on the control wire.
  const Eigen::Matrix2cd paulis[4] = {eye, px, py, pz};
  for (int k = 0; k < 4; ++k) {
    cx ref = 0;
    for (int i = 0; i < 2 && ref == 0.0; ++i)
      for (int j = 0; j < 2 && ref == 0.0; ++j)
        if (paulis[k](i, j) != 0.0) ref = u(i, j) / paulis[k](i, j);
    if (std::abs(std::abs(ref) - 1.0) > 1e-12) continue;
    if (!close(u, ref * paulis[k])) continue;
    phase(c, std::arg(ref));
    if (k == 1) cnot(c, t);
    if (k == 2) cy(c, t);
    if (k == 3) cz(c, t);
    return;
  }

  if (std::abs(u(0, 1)) < 1e-12 && std::abs(u(1, 0)) < 1e-12) {
    phase(c, std::arg(u(0, 0)));
    cphase(c, t, std::arg(u(1, 1)) - std::arg(u(0, 0)));
    return;
  }
  if (std::abs(u(0, 0)) < 1e-12 && std::abs(u(1, 1)) < 1e-12) {
    // u = X diag(u10, u01); control the diagonal part, then CNOT.
    phase(c, std::arg(u(1, 0)));
    cphase(c, t, std::arg(u(0, 1)) - std::arg(u(1, 0)));
    cnot(c, t);
    return;
  }

  // General case: ABC decomposition around two CNOTs.
  const cx det = u.determinant();
  const double phi = std::arg(det) / 2;
  const Eigen::Matrix2cd v = u * std::polar(1.0, -phi);
  const double theta = 2 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  double gamma = 0, delta = 0;
  if (std::abs(v(0, 0)) > 1e-12 && std::abs(v(1, 0)) > 1e-12) {
    gamma = std::arg(v(1, 0)) - std::arg(v(0, 0));
    delta = -std::arg(v(1, 0)) - std::arg(v(0, 0));
  } else if (std::abs(v(0, 0)) > 1e-12) {
    gamma = 0;
    delta = -2 * std::arg(v(0, 0));
  } else {
    gamma = 2 * std::arg(v(1, 0));
    delta = 0;
  }
  auto rz = [](double a) { return mat2(std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2)); };
  auto ry = [](double a) {
    return mat2(std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2));
  };
  const Eigen::Matrix2cd am = rz(gamma) * ry(theta / 2);
  const Eigen::Matrix2cd bm = ry(-theta / 2) * rz(-(delta + gamma) / 2);
  const Eigen::Matrix2cd cm = rz((delta - gamma) / 2);
  one(t, cm);
  cnot(c, t);
  one(t, bm);
  cnot(c, t);
  one(t, am);
  phase(c, phi);
}

void Circuit::append(const Circuit& other) {
  if (other.qubits > qubits) fail("append exceeds wire count");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

int Circuit::count(GateKind k) const {
  int n = 0;
  for (const Gate& g : gates) n += (g.kind == k);
  return n;
}

int Circuit::two_qubit_count() const {
  int n = 0;
  for (const Gate& g : gates) n += (arity(g.kind) == 2);
  return n;
}

void append_mapped(Circuit& dst, const Circuit& src, std::span<const int> wires) {
  if (static_cast<int>(wires.size()) != src.qubits) fail("wire map size mismatch");
  for (int w : wires)
    if (w < 0 || w >= dst.qubits) fail("wire map target out of range");
  for (const Gate& g : src.gates) {
    Gate m = g;
    for (int& q : m.q) q = wires[q];
    dst.gates.push_back(std::move(m));
  }
}

Eigen::VectorXcd apply_circuit(const Circuit& c, Eigen::VectorXcd psi) {
  const std::size_t dim = std::size_t{1} << c.qubits;
  if (static_cast<std::size_t>(psi.size()) != dim) fail("state dimension mismatch");
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::One: {
        const std::size_t bit = std::size_t{1} << g.q[0];
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & bit) continue;
          const cx a0 = psi(i), a1 = psi(i | bit);
          psi(i) = g.u(0, 0) * a0 + g.u(0, 1) * a1;
          psi(i | bit) = g.u(1, 0) * a0 + g.u(1, 1) * a1;
        }
        break;
      }
      case GateKind::CNot: {
        const std::size_t cb = std::size_t{1} << g.q[0], tb = std::size_t{1} << g.q[1];
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & cb) && !(i & tb)) std::swap(psi(i), psi(i | tb));
        break;
      }
      case GateKind::CZ: {
        const std::size_t ab = std::size_t{1} << g.q[0], bb = std::size_t{1} << g.q[1];
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & ab) && (i & bb)) psi(i) = -psi(i);
        break;
      }
      case GateKind::CY: {
        const std::size_t cb = std::size_t{1} << g.q[0], tb = std::size_t{1} << g.q[1];
        for (std::size_t i = 0; i < dim; ++i) {
          if (!(i & cb) || (i & tb)) continue;
          const cx a0 = psi(i), a1 = psi(i | tb);
          psi(i) = cx(0, -1) * a1;
          psi(i | tb) = cx(0, 1) * a0;
        }
        break;
      }
      case GateKind::Toffoli: {
        const std::size_t c1 = std::size_t{1} << g.q[0], c2 = std::size_t{1} << g.q[1];
        const std::size_t tb = std::size_t{1} << g.q[2];
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & c1) && (i & c2) && !(i & tb)) std::swap(psi(i), psi(i | tb));
        break;
      }
      case GateKind::Swap: {
        const std::size_t ab = std::size_t{1} << g.q[0], bb = std::size_t{1} << g.q[1];
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & ab) && !(i & bb)) std::swap(psi(i), psi((i ^ ab) | bb));
        break;
      }
    }
  }
  return psi;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.qubits;
  Eigen::MatrixXcd u(dim, dim);
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    basis.setZero();
    basis(j) = 1.0;
    u.col(j) = apply_circuit(c, basis);
  }
  return u;
}

int circuit_depth(const Circuit& c, bool fuse_single) {
  std::vector<int> last(c.qubits, 0);
  std::vector<char> was_one(c.qubits, 0);
  int total = 0;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::One && fuse_single && was_one[g.q[0]]) continue;
    int m = 0;
    for (int q : g.q) m = std::max(m, last[q]);
    ++m;
    for (int q : g.q) {
      last[q] = m;
      was_one[q] = (g.kind == GateKind::One);
    }
    total = std::max(total, m);
  }
  return total;
}

int two_qubit_depth(const Circuit& c) {
  std::vector<int> last(c.qubits, 0);
  int total = 0;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::One) continue;
    int m = 0;
    for (int q : g.q) m = std::max(m, last[q]);
    ++m;
    for (int q : g.q) last[q] = m;
    total = std::max(total, m);
  }
  return total;
}

// --- d4 register encodings --------------------------------------------------

namespace {

void require_d8(const FiniteGroup& g) {
  if (g.order() != 8 || g.index_of("m") < 0 || g.index_of("r") < 0)
    fail("encoding requires the dihedral-8 presentation");
}

struct Gens {
  int m, r, r2, mr;
};

Gens gens(const FiniteGroup& g) {
  require_d8(g);
  return {g.index_of("m"), g.index_of("r"), g.index_of("r2"), g.index_of("mr")};
}

}  // namespace

int d4_code(const FiniteGroup& g, int elem) {
  require_d8(g);
  // Element order is m^a r^k with index 4a + k; split k into r and r^2 bits.
  const int a = elem / 4, k = elem % 4;
  return a | ((k & 1) << 1) | ((k >> 1) << 2);
}

int d4_elem(const FiniteGroup& g, int code) {
  require_d8(g);
  const int a = code & 1, b = (code >> 1) & 1, c = (code >> 2) & 1;
  return 4 * a + (b + 2 * c) % 4;
}

int domain_bits(MultDomain d) {
  switch (d) {
    case MultDomain::Full: return 3;
    case MultDomain::Hm:
    case MultDomain::Hmr:
    case MultDomain::Hr: return 2;
    case MultDomain::Cm:
    case MultDomain::Cmr:
    case MultDomain::Cr: return 1;
  }
  return 0;
}

int domain_elem(const FiniteGroup& g, MultDomain d, int code) {
  const Gens gn = gens(g);
  if (code < 0 || code >= (1 << domain_bits(d))) return -1;
  const int a = code & 1, b = (code >> 1) & 1;
  auto pw = [&](int x, int e) { return e ? x : 0; };
  switch (d) {
    case MultDomain::Full: return d4_elem(g, code);
    case MultDomain::Hm: return g.op(pw(gn.m, a), pw(gn.r2, b));
    case MultDomain::Hmr: return g.op(pw(gn.mr, a), pw(gn.r2, b));
    case MultDomain::Hr: return g.op(pw(gn.r, a), pw(gn.r2, b));
    case MultDomain::Cm: return g.op(gn.m, pw(gn.r2, a));
    case MultDomain::Cmr: return g.op(gn.mr, pw(gn.r2, a));
    case MultDomain::Cr: return g.op(gn.r, pw(gn.r2, a));
  }
  return -1;
}

int domain_code(const FiniteGroup& g, MultDomain d, int elem) {
  for (int code = 0; code < (1 << domain_bits(d)); ++code)
    if (domain_elem(g, d, code) == elem) return code;
  return -1;
}

MultDomain domain_for(const FiniteGroup& g, std::span<const int> members) {
  std::vector<int> want(members.begin(), members.end());
  std::sort(want.begin(), want.end());
  for (MultDomain d : {MultDomain::Full, MultDomain::Hm, MultDomain::Hmr, MultDomain::Hr,
                       MultDomain::Cm, MultDomain::Cmr, MultDomain::Cr}) {
    std::vector<int> have;
    for (int code = 0; code < (1 << domain_bits(d)); ++code)
      have.push_back(domain_elem(g, d, code));
    std::sort(have.begin(), have.end());
    if (have == want) return d;
  }
  fail("no multiplication domain matches the member set");
}

Circuit emit_controlled_mult(const FiniteGroup& g, int variant, MultDomain dom) {
  require_d8(g);
  if (variant < 1 || variant > 4) fail("variant must be 1..4");
  const int w = domain_bits(dom);
  Circuit c(w + 3);
  const int t0 = w, t1 = w + 1, t2 = w + 2;

  switch (dom) {
    case MultDomain::Full: {
      // Variants 3 and 4 append the inversion fix-up: the control's r^2 bit
      // differs between g and g^-1 exactly when r is set and m is not.
      if (variant == 1 || variant == 3) {
        c.toffoli(1, t0, t2);
        c.cnot(0, t0);
        c.toffoli(1, t1, t2);
        c.cnot(1, t1);
      } else {
        c.toffoli(0, t1, t2);
        c.cnot(0, t0);
        c.toffoli(1, t1, t2);
        c.cnot(1, t1);
      }
      if (variant <= 2) {
        c.cnot(2, t2);
      } else {
        c.x(0);
        c.cnot(2, t2);
        c.toffoli(0, 1, t2);
        c.x(0);
      }
      break;
    }
    case MultDomain::Hm: {
      c.cnot(0, t0);
      c.cnot(1, t2);
      if (variant == 2 || variant == 4) c.toffoli(0, t1, t2);
      break;
    }
    case MultDomain::Hmr: {
      if (variant == 1 || variant == 3) {
        c.toffoli(0, t0, t2);
        c.cnot(0, t0);
        c.toffoli(0, t1, t2);
        c.cnot(0, t1);
        c.cnot(1, t2);
      } else {
        c.cnot(0, t0);
        c.cnot(0, t1);
        c.cnot(1, t2);
      }
      break;
    }
    case MultDomain::Hr: {
      if (variant == 1 || variant == 3) c.toffoli(0, t0, t2);
      c.toffoli(0, t1, t2);
      c.cnot(0, t1);
      c.cnot(1, t2);
      if (variant >= 3) c.cnot(0, t2);
      break;
    }
    case MultDomain::Cm: {
      c.x(t0);
      c.cnot(0, t2);
      if (variant == 2 || variant == 4) c.cnot(t1, t2);
      break;
    }
    case MultDomain::Cmr: {
      if (variant == 1 || variant == 3) {
        c.cnot(t0, t2);
        c.x(t0);
        c.cnot(t1, t2);
        c.x(t1);
        c.cnot(0, t2);
      } else {
        c.x(t0);
        c.x(t1);
        c.cnot(0, t2);
      }
      break;
    }
    case MultDomain::Cr: {
      if (variant == 1 || variant == 3) c.cnot(t0, t2);
      c.cnot(t1, t2);
      c.x(t1);
      c.cnot(0, t2);
      if (variant >= 3) c.x(t2);
      break;
    }
  }
  return c;
}

Circuit emit_generalized_conjugation(const QuantumDouble& qd, int anyon, int variant) {
  const FiniteGroup& g = qd.group();
  const Gens gn = gens(g);
  if (variant < 1 || variant > 4) fail("variant must be 1..4");
  const int d = qd.anyon(anyon).dim;
  if (d > 2) fail("anyon internal space does not fit one qubit");

  const int order[3] = {gn.m, gn.r, gn.r2};
  const int wires[3] = {0, 1, 2};
  const bool reversed = (variant == 2 || variant == 4);

  if (d == 1) {
    Circuit c(3);
    for (int k = 0; k < 3; ++k) {
      cx a = qd.a_matrix(anyon, order[k])(0, 0);
      if (variant == 2 || variant == 3) a = std::conj(a);
      if (std::abs(a - 1.0) > 1e-12) c.phase(wires[k], std::arg(a));
    }
    return c;
  }

  Circuit c(4);
  for (int pos = 0; pos < 3; ++pos) {
    const int k = reversed ? 2 - pos : pos;
    Eigen::Matrix2cd a = qd.a_matrix(anyon, order[k]);
    switch (variant) {
      case 1: a.transposeInPlace(); break;
      case 2: a = a.conjugate(); break;
      case 3: a.adjointInPlace(); break;
      default: break;
    }
    if (close(a, Eigen::Matrix2cd::Identity())) continue;
    c.controlled(wires[k], 3, a);
  }
  return c;
}

Circuit emit_decoupling_unitary(const FiniteGroup& g, const Subgroup& h) {
  require_d8(g);
  if (h.order() == 1) return Circuit(0);
  const Gens gn = gens(g);
  Circuit c(2);
  if (h.contains(gn.m) || h.contains(gn.mr)) {
    if (h.order() != 4 || !h.contains(gn.r2)) fail("unsupported subgroup");
    c.h(0);
    c.h(1);
    return c;
  }
  if (h.order() == 4 && h.contains(gn.r)) {
    c.h(1);
    c.cphase(0, 1, -kPi / 2);
    c.h(0);
    return c;
  }
  fail("unsupported subgroup");
}

std::vector<int> decoupling_irrep_of_code(const FiniteGroup& g, const Subgroup& h) {
  const Gens gn = gens(g);
  const std::vector<Irrep> irr = subgroup_irreps(g, h);
  const bool cyclic = h.contains(gn.r);
  const int gen = h.contains(gn.m) ? gn.m : (h.contains(gn.mr) ? gn.mr : gn.r);
  const int jg = h.index_in(gen);
  const int j2 = h.index_in(gn.r2);
  std::vector<int> map(4, -1);
  for (int code = 0; code < 4; ++code) {
    const int a = code & 1, b = (code >> 1) & 1;
    cx wg, w2;
    if (cyclic) {
      wg = std::pow(cx(0, 1), 2 * a + b);
      w2 = wg * wg;
    } else {
      wg = a ? -1.0 : 1.0;
      w2 = b ? -1.0 : 1.0;
    }
    for (std::size_t i = 0; i < irr.size(); ++i)
      if (std::abs(irr[i].character(jg) - wg) < 1e-9 && std::abs(irr[i].character(j2) - w2) < 1e-9)
        map[code] = static_cast<int>(i);
    if (map[code] < 0) fail("no subgroup irrep matches the ancilla code");
  }
  return map;
}

}  // namespace qd
