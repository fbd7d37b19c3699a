#pragma once

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qd/anyon.hpp"
#include "qd/lattice.hpp"
#include "qd/state.hpp"

namespace qd {

/// One walk instruction: travel an edge to the neighbouring vertex, or cross
/// a dart while pivoting around the current vertex. The edge name is enough
/// to disambiguate, including at degree-2 vertices where both incident darts
/// connect the same two gaps with different operators.
struct RibbonMove {
  enum class Kind { travel, cross };
  Kind kind = Kind::travel;
  std::string edge;
};

/// Elementary triangle derived from two adjacent corners.
struct RibbonStep {
  bool type_two = false;
  Corner from{}, to{};
  // travel (type I): direction along the edge and the strip side, expressed
  // as whether the departure gap follows the dart in the rotation.
  int edge = -1;
  bool fwd = false;
  bool depart_after = false;
  // pivot (type II): the crossed dart and the crossing sense (true when the
  // walk moves from the gap after the dart to the gap before it).
  int vertex = -1;
  Dart crossed{};
  bool to_before = false;
};

/// Validated corner walk with derived triangle data.
class RibbonPath {
 public:
  /// Derives steps from a start corner and a move list; throws on moves that
  /// do not flank the current corner.
  static RibbonPath trace(const Lattice& l, Corner start, std::span<const RibbonMove> moves);
  /// Space-separated move tokens "I:edge" (travel) and "X:edge" (cross).
  static RibbonPath parse(const Lattice& l, Corner start, std::string_view spec);

  Corner back() const { return corners_.front(); }
  Corner front() const { return corners_.back(); }
  bool closed() const { return corners_.size() > 1 && back() == front(); }
  const std::vector<RibbonStep>& steps() const { return steps_; }
  const std::vector<Corner>& corners() const { return corners_; }

 private:
  std::vector<Corner> corners_;
  std::vector<RibbonStep> steps_;
};

/// Internal-space data driving the triangle operators: one flux label per
/// ancilla digit and the charge-action matrix family. Reducible references
/// (used by flavour-conditioned interferometry) are expressed the same way.
struct RibbonRep {
  std::vector<int> labels;
  std::function<Eigen::MatrixXcd(int)> a;
  int dim() const { return static_cast<int>(labels.size()); }
};

/// Conditioning of a ribbon application on a qubit register: digit 1 applies
/// the primary triangles, digit 0 the reference's (identity action when
/// `ref` is null). The reference must match the ancilla dimension.
struct RibbonControl {
  int control = -1;
  const RibbonRep* ref = nullptr;
};

/// Live open ribbon: its two ancilla registers and end corners. Register
/// indices refer to the state the pair was created on and shift when other
/// registers are removed; see shift_for_removed.
struct RibbonHandle {
  int anyon = 0;
  int anc_back = -1;
  int anc_front = -1;
  Corner back{}, front{};
};

/// Applies ribbon operators to states whose registers 0..E-1 are the lattice
/// edges. Front and back extensions follow mirrored type-I rules; type-II
/// steps conjugate the ancilla by the crossed edge's value through the
/// charge-action family. Exercised rule variants are counted in coverage().
class RibbonEngine {
 public:
  RibbonEngine(const QuantumDouble& qd, const Lattice& l);

  const QuantumDouble& doubled() const { return *qd_; }
  const Lattice& lattice() const { return *l_; }

  /// Internal-space data for a catalogue anyon.
  RibbonRep rep(int anyon) const;

  /// Appends the back and front ancilla registers in the maximally entangled
  /// state, then applies the triangles of `path` front-style. The closing
  /// Bell projection then realizes the internally summed pair operator;
  /// finalizing an open ribbon right away succeeds with probability 1/d^2 on
  /// the ground state.
  RibbonHandle create_pair(QState& psi, int anyon, const RibbonPath& path) const;
  /// Front extension; `ext` must start at the handle's front corner.
  void extend_front(QState& psi, RibbonHandle& h, const RibbonPath& ext,
                    const RibbonControl& ctrl = {}) const;
  /// Rear extension; `ext` runs from the new rear corner to the current one
  /// and its steps are applied innermost (old rear) first.
  void extend_back(QState& psi, RibbonHandle& h, const RibbonPath& ext,
                   const RibbonControl& ctrl = {}) const;
  /// Bell projection of the ancilla pair; removes both registers, returns the
  /// success probability and invalidates the handle's registers.
  double finalize(QState& psi, RibbonHandle& h) const;

  /// Inserts two registers of dimension `dim` at the end in the maximally
  /// entangled state; returns (first, second) indices.
  static std::pair<int, int> attach_entangled(QState& psi, int dim);

  /// Quantum-trace loop: entangled ancillas, front triangles around the
  /// closed path, Bell projection. Returns the success probability.
  double closed_loop(QState& psi, int anyon, const RibbonPath& loop,
                     const RibbonControl& ctrl = {}) const;

  /// Raw front-rule application of a rep along a path onto an existing
  /// ancilla register.
  void apply_front(QState& psi, const RibbonRep& rep, const RibbonPath& path, int anc,
                   const RibbonControl& ctrl = {}) const;
  void apply_back(QState& psi, const RibbonRep& rep, const RibbonPath& path, int anc,
                  const RibbonControl& ctrl = {}) const;

  /// Adjusts a handle's register indices after `removed` registers below
  /// them were dropped from the state.
  static void shift_for_removed(RibbonHandle& h, std::span<const int> removed);

  /// Counters for the 16 triangle-rule variants, indexed by
  /// back | type_two << 1 | dart_fwd << 2 | (depart_after or to_before) << 3.
  const std::array<long, 16>& coverage() const { return coverage_; }
  void reset_coverage() const { coverage_.fill(0); }

 private:
  void apply_step(QState& psi, const RibbonRep& rep, const RibbonStep& s, int anc, bool back_end,
                  const RibbonControl& ctrl) const;

  const QuantumDouble* qd_;
  const Lattice* l_;
  mutable std::array<long, 16> coverage_{};
};

}  // namespace qd
