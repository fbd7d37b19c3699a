#pragma once

#include "qd/anyon.hpp"

namespace qd {

/// Fusion multiplicities and modular data of a quantum double, derived from
/// the D(G) character ring: N_ab^c is the inner product of the product
/// character chi_{a x b}(h, g) = sum_{h'} chi_a(h', g) chi_b(h'^{-1} h, g)
/// with chi_c.
class FusionTable {
 public:
  explicit FusionTable(const QuantumDouble& qd);

  const QuantumDouble& doubled() const { return *qd_; }
  int num_anyons() const { return na_; }
  int n(int a, int b, int c) const { return tensor_[(a * na_ + b) * na_ + c]; }
  /// Decomposition of a x b as (anyon, multiplicity) pairs.
  std::vector<std::pair<int, int>> channels(int a, int b) const;
  /// Charge conjugate of a (unique c with N_ab^0 = delta_{b,c}).
  int dual(int a) const;

  /// Total quantum dimension sqrt(sum_a d_a^2); equals |G| for a double.
  double total_dim() const;
  /// Modular S from the twist sum S_ab = (1/D) sum_c N_ab^c d_c theta_c/(theta_a theta_b).
  Eigen::MatrixXcd s_matrix() const;
  /// Rescaled monodromy S~_ab = D S_ab / (d_a d_b).
  Eigen::MatrixXcd s_tilde() const;
  Eigen::VectorXcd t_diag() const;

 private:
  const QuantumDouble* qd_;
  int na_ = 0;
  std::vector<int> tensor_;
};

}  // namespace qd
