#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qd {

using cx = std::complex<double>;

/// Conjugacy class of a finite group. `rep` is the smallest member index,
/// `members` is sorted ascending.
struct ConjugacyClass {
  int rep = 0;
  std::vector<int> members;
  int size() const { return static_cast<int>(members.size()); }
};

/// Subgroup given by its sorted member list (members[0] is the identity).
struct Subgroup {
  std::vector<int> members;
  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  /// Position of g inside `members`, or -1.
  int index_in(int g) const;
};

/// Unitary irreducible representation, matrices indexed by group element
/// (or by position in a subgroup's member list).
struct Irrep {
  std::string name;
  int dim = 1;
  std::vector<Eigen::MatrixXcd> mats;
  cx character(int g) const { return mats[g].trace(); }
};

/// Finite group with dense multiplication table and cached structure data.
///
/// Element 0 is always the identity. Named builders fix a canonical element
/// order; in particular dihedral-type groups use the normal form m^a r^b with
/// index 4a+b (or 3a+b for s3).
class FiniteGroup {
 public:
  /// Builders for "d4", "q8", "s3", "z2", "z4", "z2xz2". Throws on unknown names.
  static FiniteGroup named(std::string_view name);
  /// Builds from a row-major multiplication table `table[a*n+b] = a*b`.
  /// Validates group axioms and that element 0 is the identity.
  static FiniteGroup from_table(std::vector<std::string> names, std::vector<int> table,
                                std::string label = "custom");

  int order() const { return n_; }
  int identity() const { return 0; }
  int op(int a, int b) const { return mul_[a * n_ + b]; }
  int inverse(int g) const { return inv_[g]; }
  /// g x g^-1
  int conjugate(int g, int x) const { return op(op(g, x), inv_[g]); }
  int element_order(int g) const;
  bool is_abelian() const;

  const std::string& label() const { return label_; }
  const std::string& name(int g) const { return names_[g]; }
  /// Index of a named element, or -1.
  int index_of(std::string_view name) const;

  /// Classes sorted by (size, smallest member); this matches the conventional
  /// character-table column order for the named groups.
  const std::vector<ConjugacyClass>& classes() const;
  int class_of(int g) const;

  Subgroup centralizer(int g) const;
  Subgroup center() const;
  Subgroup generated(std::span<const int> gens) const;
  Subgroup whole() const;

  /// Complete list of unitary irreps. Hand-built for the named groups (with a
  /// fixed basis so matrix-valued goldens are reproducible); computed via the
  /// regular-representation commutant otherwise.
  const std::vector<Irrep>& irreps() const;
  /// Rows follow irreps(), columns follow classes().
  Eigen::MatrixXcd character_table() const;

 private:
  FiniteGroup() = default;
  void validate() const;

  int n_ = 0;
  std::string label_;
  std::vector<std::string> names_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  mutable std::vector<ConjugacyClass> classes_;
  mutable std::vector<int> class_of_;
  mutable std::vector<Irrep> irreps_;
};

/// Irreps of a subgroup, matrices indexed by position in H.members.
///
/// Cyclic subgroups get characters chi_k(gen^j) = exp(2*pi*i*k*j/|H|) where gen
/// is the smallest-index element of maximal order; k runs 0..|H|-1, so |H| = 4
/// yields the order (1, i, -1, -i). Non-cyclic abelian subgroups are labelled
/// by character tuples on greedily chosen generators, enumerated
/// lexicographically with +1 before -1. Non-abelian subgroups fall back to the
/// commutant method (or reuse the parent's tables when H is the whole group).
std::vector<Irrep> subgroup_irreps(const FiniteGroup& g, const Subgroup& h);

/// Unnormalized overlap table: entry (i, j) = sum_{h in H} conj(chi_Hi(h)) * chi_j(h),
/// rows over subgroup_irreps(g, h), columns over g.irreps(). Entries are
/// integers for the groups used here; divide by |H| for restriction
/// multiplicities.
Eigen::MatrixXcd subgroup_overlap_table(const FiniteGroup& g, const Subgroup& h);

/// Commutant-eigenvector irrep solver for small groups; exposed for testing.
/// Deterministic for a fixed seed, retries with fresh randomness if a
/// degenerate draw is detected.
std::vector<Irrep> compute_irreps_generic(const FiniteGroup& g, unsigned seed = 7);

}  // namespace qd
