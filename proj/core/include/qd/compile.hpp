#pragma once

#include <iosfwd>
#include <utility>

#include "qd/circuit.hpp"
#include "qd/experiment.hpp"

namespace qd {

/// Rectangular coupler grid. Qubits sit on integer (row, col) nodes, two-qubit
/// gates are allowed between nodes at Manhattan distance one, and the native
/// set is arbitrary single-qubit gates plus CZ.
struct DeviceModel {
  int rows = 0;
  int cols = 0;
  int nodes() const { return rows * cols; }
  int node(int r, int c) const { return r * cols + c; }
  int row(int n) const { return n / cols; }
  int col(int n) const { return n % cols; }
  bool in_range(int n) const { return n >= 0 && n < nodes(); }
  bool adjacent(int a, int b) const;
};

/// Injective assignment of circuit wires to grid nodes.
struct Layout {
  std::vector<int> node;  // wire -> node id
};

/// Reads a placement file: a `grid R C` line followed by one `q<i> <row>
/// <col>` line per wire. Lines starting with '#' are skipped.
std::pair<DeviceModel, Layout> parse_placement(std::istream& in);

/// Gate-level lowering without routing: Toffoli becomes the six-CNOT phase
/// template, CY a CNOT conjugated by S gates, SWAP three CNOTs, and every
/// CNOT an H-conjugated CZ. The result uses only single-qubit and CZ gates
/// on the same wires.
Circuit lower_to_native(const Circuit& ir);

struct CompiledCircuit {
  Circuit native;          // One and CZ gates; wire w lives at grid node nodes[w]
  DeviceModel device;
  std::vector<int> nodes;  // wire -> node id (the layout order)
  std::vector<int> final;  // logical qubit -> wire after routing
  int toffoli_pre = 0;
  int swaps = 0;
};

/// Routes the IR onto the device: logical qubits start on their layout wires,
/// SWAP chains walk non-adjacent operands together along shortest induced
/// paths (deterministic BFS), and the result is lowered to the native set.
/// The compiled action equals the input on the initial embedding up to the
/// final wire permutation.
CompiledCircuit compile_to_device(const Circuit& ir, const DeviceModel& dev, const Layout& lay);

struct DepthReport {
  int depth = 0;            // all gates; consecutive single-qubit runs fused
  int two_qubit_depth = 0;  // CZ layers only
  int two_qubit_count = 0;
  int toffoli_pre = 0;      // Toffoli gates before decomposition
  int swaps = 0;
};

DepthReport depth_report(const CompiledCircuit& cc);

/// Permutation unitary sending logical basis bit l to wire perm[l].
Eigen::MatrixXcd wire_permutation(const std::vector<int>& perm);
/// Largest entry of u - e^{i phi} v after aligning the global phase on the
/// largest entry of v.
double phase_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// One gate per line: name, then wire ids (plain circuit) or grid coordinates
/// (compiled circuit).
void dump_circuit(std::ostream& os, const Circuit& c);
void dump_compiled(std::ostream& os, const CompiledCircuit& cc);

// --- protocol circuits ------------------------------------------------------

/// Qubit-level ground-state preparation. Ladders pair each bottom edge with
/// the top edge above it: Hadamards below, a transversal CNOT rung upward.
/// The planar graph additionally multiplies the second edge onto the third
/// with a full controlled multiplication.
Circuit ground_state_circuit(const FiniteGroup& g, const Lattice& l);

/// Unitary part of a ribbon protocol on qubits: ground state, ribbon actions
/// (ancilla pairs entangled by H + CNOT, triangle steps emitted per move),
/// Bell-basis rotations, and the subgroup charge probe. Measurements are left
/// to the caller: project each bell pair onto 00 and read the probe and edge
/// wires in the computational basis.
struct ProtocolCircuit {
  Circuit circuit;
  std::vector<std::pair<int, int>> bell_pairs;  // (back, front) wires
  int probe0 = -1;                              // probe wires probe0, probe0+1
  Subgroup subgroup;
  std::vector<int> irrep_of_code;  // two-bit probe code -> subgroup irrep
  Corner flux_site{0, 0};
  int edge_wire(int e) const { return 3 * e; }
};

ProtocolCircuit protocol_circuit(const QuantumDouble& qd, const Lattice& l,
                                 const ProtocolSpec& spec);

/// Hand placements for the shipped protocols on the n = 2 ladder and the
/// planar graph (18 wires each).
std::pair<DeviceModel, Layout> fusion_ladder_placement();
std::pair<DeviceModel, Layout> fusion_planar_placement();

}  // namespace qd
