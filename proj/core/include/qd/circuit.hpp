#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qd/anyon.hpp"
#include "qd/group.hpp"

namespace qd {

/// Gate kinds of the circuit IR. `One` carries an arbitrary 2x2 unitary; the
/// multi-qubit kinds are fixed operators identified by kind alone.
enum class GateKind { One, CNot, CZ, CY, Toffoli, Swap };

struct Gate {
  GateKind kind = GateKind::One;
  /// One: {t}. CNot/CY: {control, target}. CZ/Swap: {a, b} (symmetric).
  /// Toffoli: {control, control, target}.
  std::vector<int> q;
  Eigen::Matrix2cd u;  // One only
  std::string label;   // One only, for dumps ("H", "S", ...)
};

/// Ordered gate list over `qubits` wires. Helper methods append one gate and
/// validate operand arity and range.
struct Circuit {
  int qubits = 0;
  std::vector<Gate> gates;

  explicit Circuit(int n = 0) : qubits(n) {}

  void one(int t, const Eigen::Matrix2cd& u, std::string label = "U");
  void h(int t);
  void x(int t);
  void z(int t);
  void s(int t);
  void sdg(int t);
  void t(int q);
  void tdg(int q);
  /// diag(1, e^{i theta})
  void phase(int t, double theta);
  void cnot(int c, int t);
  void cz(int a, int b);
  void cy(int c, int t);
  void toffoli(int c1, int c2, int t);
  void swap(int a, int b);
  /// Controlled diag(1, e^{i theta}) built from two CNOTs and phase gates.
  void cphase(int c, int t, double theta);
  /// Controlled 2x2 unitary, specialized to {phase, CNot, CY, CZ, cphase}
  /// when the matrix allows it and to a two-CNOT ABC decomposition otherwise.
  void controlled(int c, int t, const Eigen::Matrix2cd& u);

  void append(const Circuit& other);
  int count(GateKind k) const;
  /// CNot + CZ + CY + Swap gates (Toffoli counted separately).
  int two_qubit_count() const;
};

/// Appends `src` to `dst` with wire i of `src` renamed to wires[i].
void append_mapped(Circuit& dst, const Circuit& src, std::span<const int> wires);

/// Applies the circuit to a state vector of dimension 2^qubits. Basis index
/// bit q holds qubit q (little endian).
Eigen::VectorXcd apply_circuit(const Circuit& c, Eigen::VectorXcd psi);
/// Dense unitary of the whole circuit; meant for registers of ~12 qubits or
/// fewer.
Eigen::MatrixXcd circuit_unitary(const Circuit& c);
/// Longest chain under disjoint-moment scheduling. With `fuse_single`,
/// consecutive single-qubit gates on one wire share a moment, matching
/// hardware with free single-qubit recompilation.
int circuit_depth(const Circuit& c, bool fuse_single = true);
/// Moments counting only two-qubit gates (single-qubit layers are free).
int two_qubit_depth(const Circuit& c);

// --- d4 register encodings --------------------------------------------------

/// Three-bit edge code of a dihedral-8 element: g = m^a r^b (r^2)^c maps to
/// a | b<<1 | c<<2, one qubit per generator in the order (m, r, r^2).
int d4_code(const FiniteGroup& g, int elem);
int d4_elem(const FiniteGroup& g, int code);

/// Control-register domains with dedicated multiplication circuits: the full
/// group (3 control qubits), its three index-2 subgroups (2 qubits, codes
/// h = gen^a (r^2)^b with gen = m, mr, r), and the three two-element
/// conjugacy classes (1 qubit, codes c = rep (r^2)^a).
enum class MultDomain { Full, Hm, Hmr, Hr, Cm, Cmr, Cr };

int domain_bits(MultDomain d);
/// Element encoded by `code`, or -1 when the code is outside the domain.
int domain_elem(const FiniteGroup& g, MultDomain d, int code);
/// Code of `elem`, or -1 when the element is outside the domain.
int domain_code(const FiniteGroup& g, MultDomain d, int elem);
/// Domain whose member set equals `members`, if any.
MultDomain domain_for(const FiniteGroup& g, std::span<const int> members);

/// Controlled group multiplication |x>|h> -> |x>|f(g,h)> with g the domain
/// element coded by the control register x and f per variant: 1: g h,
/// 2: h g, 3: g^-1 h, 4: h g^-1. Control qubits come first, then the target
/// edge triple. Gate lists follow the per-domain optimized forms; behaviour
/// on codes outside the domain is unconstrained but unitary.
Circuit emit_controlled_mult(const FiniteGroup& g, int variant, MultDomain dom);

/// Generalized conjugation for an anyon whose internal space fits one qubit
/// (every d4 anyon). Wires: edge triple (m, r, r^2) = qubits 0..2, internal
/// ancilla = 3 (absent for one-dimensional anyons, where the action is a
/// pure controlled phase). Variant selects the applied matrix: 1: A^T(g),
/// 2: A^T(g^-1), 3: A(g^-1), 4: A(g). No Toffoli gates are emitted.
Circuit emit_generalized_conjugation(const QuantumDouble& qd, int anyon, int variant);

/// Character-basis rotation on a two-qubit subgroup ancilla: qubit 0 is the
/// generator bit, qubit 1 the r^2 bit. Klein subgroups get two Hadamards,
/// the cyclic-4 subgroup a Hadamard pair bridged by a controlled phase.
/// Equals the abstract transform |h> -> sum_chi conj(chi(h))/sqrt|H| |chi>
/// with irrep bits (a, b) meaning chi(gen) = (-1)^a (i^{2a+b} for cyclic 4)
/// and chi(r^2) = (-1)^b.
Circuit emit_decoupling_unitary(const FiniteGroup& g, const Subgroup& h);

/// Positions of subgroup irreps in subgroup_irreps order for each two-bit
/// ancilla code, inverse of the encoding used by emit_decoupling_unitary.
std::vector<int> decoupling_irrep_of_code(const FiniteGroup& g, const Subgroup& h);

}  // namespace qd
