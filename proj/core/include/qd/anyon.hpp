#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qd/group.hpp"

namespace qd {

/// Anyon catalogue and on-site algebra of the quantum double D(G).
///
/// An anyon is a pair (conjugacy class C, irrep chi of the centralizer of the
/// class representative). Its internal space has the basis |c, i> with c a
/// class member (sorted ascending) and i an irrep row; the flat index is
/// member_position * dim(chi) + i. Flux projectors B(g) are diagonal in this
/// basis and the charge action A(g) permutes the flux label while rotating the
/// irrep rows:
///   A(g)|c', i'> = sum_i Gamma(q_c g q_{c'}^{-1})_{i i'} |c, i'>,  c = g c' g^{-1},
/// where q_c is the smallest-index element conjugating c into the class
/// representative (q_c c q_c^{-1} = rep).
class QuantumDouble {
 public:
  struct AnyonInfo {
    std::string name;    // display name (UTF-8)
    std::string ascii;   // plain-ASCII alias accepted on input
    int index = 0;       // canonical catalogue index
    int class_id = 0;    // into group().classes()
    int irrep_id = 0;    // into centralizer_irreps(class_id)
    int dim = 1;         // quantum dimension |C| * dim(chi)
    cx twist{1, 0};
    bool is_abelian() const { return dim == 1; }
  };

  explicit QuantumDouble(FiniteGroup g);

  const FiniteGroup& group() const { return group_; }
  int num_anyons() const { return static_cast<int>(anyons_.size()); }
  const AnyonInfo& anyon(int idx) const { return anyons_[idx]; }
  const std::vector<AnyonInfo>& anyons() const { return anyons_; }
  /// Accepts display or ASCII names; -1 if absent.
  int find(std::string_view name) const;
  int vacuum() const { return 0; }

  const Subgroup& centralizer(int class_id) const { return cents_[class_id]; }
  const std::vector<Irrep>& centralizer_irreps(int class_id) const { return cent_irreps_[class_id]; }
  const Irrep& irrep_of(int anyon) const;
  /// q_x with q_x x q_x^{-1} = rep(class of x), smallest index.
  int q_of(int x) const { return q_[x]; }

  /// Charge action on the internal space, dim d x d.
  Eigen::MatrixXcd a_matrix(int anyon, int g) const;
  /// Flux projector diagonal: entry 1 where the flux label equals g.
  Eigen::MatrixXcd b_matrix(int anyon, int g) const;

  /// D(G) character chi_a(h, g); zero unless h lies in the class and gh = hg.
  cx dg_character(int anyon, int h, int g) const;
  /// Inner product (1/|G|) sum_{hg=gh} x(h,g) conj(y(h,g)) over characters
  /// given as flat |G|x|G| arrays indexed h*|G|+g.
  cx character_inner(const std::vector<cx>& x, const std::vector<cx>& y) const;
  /// Flat character array for an anyon, indexed h*|G|+g.
  std::vector<cx> character_array(int anyon) const;

 private:
  void build_catalogue();

  FiniteGroup group_;
  std::vector<AnyonInfo> anyons_;
  std::vector<Subgroup> cents_;                    // per class
  std::vector<std::vector<Irrep>> cent_irreps_;    // per class
  std::vector<int> q_;                             // per element
};

}  // namespace qd
