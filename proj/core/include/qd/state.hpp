#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qd/group.hpp"
#include "qd/lattice.hpp"

namespace qd {

using Rng = std::mt19937_64;

/// Dense state vector over an ordered list of finite-dimensional registers.
/// Register 0 is the most significant digit of the flat index. Registers can
/// be inserted and removed as protocols attach and discharge ancillas; all
/// register indices shift accordingly.
class QState {
 public:
  explicit QState(std::vector<int> dims);

  int num_regs() const { return static_cast<int>(dims_.size()); }
  int dim(int reg) const { return dims_[reg]; }
  std::size_t size() const { return amps_.size(); }
  std::size_t stride(int reg) const { return strides_[reg]; }
  int digit(std::size_t idx, int reg) const {
    return static_cast<int>(idx / strides_[reg]) % dims_[reg];
  }

  Eigen::VectorXcd& amps() { return amps_; }
  const Eigen::VectorXcd& amps() const { return amps_; }

  /// Resets to the given basis state.
  void set_basis(std::span<const int> digits);

  void apply_unary(int reg, const Eigen::MatrixXcd& u);
  /// In-place bijective relabelling x -> map[x] of one register's digit.
  void apply_map(int reg, std::span<const int> map);
  /// x -> map[c][x] on `tgt`, selected by the digit of `ctrl`.
  void apply_controlled_map(int ctrl, int tgt, const std::vector<std::vector<int>>& map);
  /// u(c) on `tgt`, selected by the digit of `ctrl`.
  void apply_controlled_unitary(int ctrl, int tgt,
                                const std::function<Eigen::MatrixXcd(int)>& u);
  /// u(digits of ctrls) on `tgt`; the family is precomputed over all control
  /// digit tuples.
  void apply_controlled_unitary(std::span<const int> ctrls, int tgt,
                                const std::function<Eigen::MatrixXcd(std::span<const int>)>& u);
  /// Phase digit-function over a set of registers (diagonal operator).
  void apply_phase(std::span<const int> regs, const std::function<cx(std::span<const int>)>& ph);
  /// Joint bijective digit map over a set of registers; `f` mutates the digit
  /// tuple in place.
  void apply_multi_map(std::span<const int> regs, const std::function<void(std::span<int>)>& f);

  std::vector<double> distribution(int reg) const;
  /// Probability-weighted histogram over the digit tuple of `regs`, flattened
  /// row-major (regs[0] most significant).
  std::vector<double> joint_distribution(std::span<const int> regs) const;

  /// Projects reg onto `value`. Returns the outcome probability; when
  /// `renormalize` and the probability is nonzero the state is rescaled.
  double project(int reg, int value, bool renormalize = true);
  /// Projects and drops the register.
  double project_out(int reg, int value, bool renormalize = true);
  /// Samples a computational outcome for reg, collapses and renormalizes.
  int measure(int reg, Rng& rng);

  /// Inserts a fresh register at `pos` in basis state `value`.
  void insert_reg(int pos, int dim, int value = 0);
  /// Removes a register that is exactly in basis state `value` (checked).
  void remove_reg(int reg, int value = 0);

  /// Projects two equal-dimension registers onto the maximally entangled pair
  /// (1/sqrt d) sum_v |v,v> and removes them. Returns the success probability
  /// (for a normalized input); the survivor is renormalized when nonzero.
  double bell_contract(int reg_a, int reg_b);

  double norm2() const { return amps_.squaredNorm(); }
  void normalize();
  cx inner(const QState& other) const { return amps_.dot(other.amps_); }

 private:
  void recompute_strides();

  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  Eigen::VectorXcd amps_;
};

/// Value of the vertex word at a corner for one basis assignment of all edge
/// registers (edge e's digit = group element on e).
int word_value(const FiniteGroup& g, const Lattice& l, Corner c, std::span<const int> edge_digits);

/// A_p(h): aligned boundary edges pick up h on the left, anti-aligned ones
/// h^{-1} on the right. Assumes registers 0..E-1 are the edge registers.
void apply_face_mult(QState& psi, const FiniteGroup& g, const Lattice& l, int face, int h);

/// Plaquette charge projector (1/|G|) sum_h A_p(h), in place (not unitary).
void apply_plaquette_projector(QState& psi, const FiniteGroup& g, const Lattice& l, int face);

/// <psi| (1/|G|) sum_h A_p(h) |psi> for a normalized state.
double plaquette_expectation(const QState& psi, const FiniteGroup& g, const Lattice& l, int face);

/// <psi| B_v(e) |psi>: probability that the vertex word reads the identity.
double vertex_expectation(const QState& psi, const FiniteGroup& g, const Lattice& l, int vertex);

/// Distribution of the word value read from `corner` (indexed by group element).
std::vector<double> word_distribution(const QState& psi, const FiniteGroup& g, const Lattice& l,
                                      Corner corner);

/// Ground state of the quantum double on a sphere lattice: the product of all
/// plaquette projectors applied to the all-identity configuration, normalized.
/// One register per edge, dimension |G|, in lattice edge order.
QState ground_state(const FiniteGroup& g, const Lattice& l);

}  // namespace qd
