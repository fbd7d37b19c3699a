#include "qd/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {

FusionTable::FusionTable(const QuantumDouble& qd) : qd_(&qd), na_(qd.num_anyons()) {
  const auto& g = qd.group();
  const int n = g.order();

  std::vector<std::vector<cx>> chars(na_);
  for (int a = 0; a < na_; ++a) chars[a] = qd.character_array(a);

  tensor_.assign(static_cast<size_t>(na_) * na_ * na_, 0);
  std::vector<cx> prod(static_cast<size_t>(n) * n);
  for (int a = 0; a < na_; ++a)
    for (int b = a; b < na_; ++b) {
      std::fill(prod.begin(), prod.end(), cx(0, 0));
      for (int h = 0; h < n; ++h)
        for (int gg = 0; gg < n; ++gg) {
          if (g.op(gg, h) != g.op(h, gg)) continue;
          cx acc = 0;
          for (int hp = 0; hp < n; ++hp) {
            cx xa = chars[a][hp * n + gg];
            if (xa == cx(0, 0)) continue;
            acc += xa * chars[b][g.op(g.inverse(hp), h) * n + gg];
          }
          prod[h * n + gg] = acc;
        }
      for (int c = 0; c < na_; ++c) {
        cx val = qd.character_inner(prod, chars[c]);
        long m = std::lround(val.real());
        if (std::abs(val.real() - m) > 1e-9 || std::abs(val.imag()) > 1e-9 || m < 0)
          throw std::logic_error("non-integer fusion multiplicity");
        tensor_[(a * na_ + b) * na_ + c] = static_cast<int>(m);
        tensor_[(b * na_ + a) * na_ + c] = static_cast<int>(m);
      }
    }
}

std::vector<std::pair<int, int>> FusionTable::channels(int a, int b) const {
  std::vector<std::pair<int, int>> out;
  for (int c = 0; c < na_; ++c)
    if (int m = n(a, b, c); m > 0) out.emplace_back(c, m);
  return out;
}

int FusionTable::dual(int a) const {
  for (int b = 0; b < na_; ++b)
    if (n(a, b, 0) > 0) return b;
  throw std::logic_error("no dual found");
}

double FusionTable::total_dim() const {
  double s = 0;
  for (int a = 0; a < na_; ++a) {
    double d = qd_->anyon(a).dim;
    s += d * d;
  }
  return std::sqrt(s);
}

Eigen::MatrixXcd FusionTable::s_matrix() const {
  const double dd = total_dim();
  Eigen::MatrixXcd s(na_, na_);
  for (int a = 0; a < na_; ++a)
    for (int b = 0; b < na_; ++b) {
      cx acc = 0;
      for (int c = 0; c < na_; ++c)
        if (int m = n(a, b, c); m > 0)
          acc += static_cast<double>(m) * static_cast<double>(qd_->anyon(c).dim) *
                 qd_->anyon(c).twist;
      s(a, b) = acc / (qd_->anyon(a).twist * qd_->anyon(b).twist) / dd;
    }
  return s;
}

Eigen::MatrixXcd FusionTable::s_tilde() const {
  Eigen::MatrixXcd s = s_matrix();
  const double dd = total_dim();
  for (int a = 0; a < na_; ++a)
    for (int b = 0; b < na_; ++b)
      s(a, b) *= dd / (static_cast<double>(qd_->anyon(a).dim) * qd_->anyon(b).dim);
  return s;
}

Eigen::VectorXcd FusionTable::t_diag() const {
  Eigen::VectorXcd t(na_);
  for (int a = 0; a < na_; ++a) t(a) = qd_->anyon(a).twist;
  return t;
}

}  // namespace qd
