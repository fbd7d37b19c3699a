#include "qd/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qd {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd pauli(char which) {
  Eigen::Matrix2cd s;
  const cx i(0, 1);
  switch (which) {
    case 'x': s << 0, 1, 1, 0; break;
    case 'y': s << 0, -i, i, 0; break;
    case 'z': s << 1, 0, 0, -1; break;
    default: s.setIdentity(); break;
  }
  return s;
}

Eigen::MatrixXcd scalar_mat(cx v) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = v;
  return m;
}

/// Dihedral-family table on the normal form m^a r^b, index nr*a + b.
/// Composition: m^a r^b * m^c r^d = m^{a+c} r^{(-1)^c b + d}, with the quaternion
/// variant folding m^2 = r^{nr/2} back into the rotation part.
std::vector<int> dihedral_table(int nr, bool m2_is_half_turn) {
  const int n = 2 * nr;
  std::vector<int> mul(n * n);
  auto idx = [nr](int a, int b) { return nr * a + b; };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < nr; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < nr; ++d) {
          int a2 = a + c;
          int b2 = ((c ? -b : b) + d) % nr;
          if (b2 < 0) b2 += nr;
          if (m2_is_half_turn && a2 == 2) b2 = (b2 + nr / 2) % nr;
          mul[idx(a, b) * n + idx(c, d)] = idx(a2 % 2, b2);
        }
  return mul;
}

std::vector<int> cyclic_table(int n) {
  std::vector<int> mul(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  return mul;
}

std::vector<Irrep> d4_irreps() {
  std::vector<Irrep> out;
  auto one_dim = [](std::string name, auto chi) {
    Irrep ir;
    ir.name = std::move(name);
    ir.dim = 1;
    for (int g = 0; g < 8; ++g) ir.mats.push_back(scalar_mat(chi(g / 4, g % 4)));
    return ir;
  };
  out.push_back(one_dim("1", [](int, int) { return 1.0; }));
  out.push_back(one_dim("a_r", [](int a, int) { return a ? -1.0 : 1.0; }));
  out.push_back(one_dim("a_m", [](int, int b) { return b % 2 ? -1.0 : 1.0; }));
  out.push_back(one_dim("a_mr", [](int a, int b) { return (a + b) % 2 ? -1.0 : 1.0; }));
  // Basis of the 2d irrep is pinned: eps(r) = -i sigma_y, eps(m) = sigma_z.
  Irrep eps;
  eps.name = "eps";
  eps.dim = 2;
  const Eigen::Matrix2cd gr = cx(0, -1) * pauli('y');
  const Eigen::Matrix2cd gm = pauli('z');
  for (int g = 0; g < 8; ++g) {
    Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
    if (g / 4) v = v * gm;
    for (int k = 0; k < g % 4; ++k) v = v * gr;
    eps.mats.push_back(v);
  }
  out.push_back(std::move(eps));
  return out;
}

std::vector<Irrep> q8_irreps() {
  std::vector<Irrep> out;
  auto one_dim = [](std::string name, double s, double t) {
    Irrep ir;
    ir.name = std::move(name);
    ir.dim = 1;
    for (int g = 0; g < 8; ++g) {
      int a = g / 4, b = g % 4;
      ir.mats.push_back(scalar_mat(std::pow(s, a) * std::pow(t, b)));
    }
    return ir;
  };
  out.push_back(one_dim("1", 1, 1));
  out.push_back(one_dim("a_i", -1, 1));
  out.push_back(one_dim("a_j", 1, -1));
  out.push_back(one_dim("a_k", -1, -1));
  Irrep eps;
  eps.name = "eps";
  eps.dim = 2;
  const Eigen::Matrix2cd gi = cx(0, 1) * pauli('z');
  const Eigen::Matrix2cd gj = cx(0, 1) * pauli('y');
  for (int g = 0; g < 8; ++g) {
    Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
    if (g / 4) v = v * gj;
    for (int k = 0; k < g % 4; ++k) v = v * gi;
    eps.mats.push_back(v);
  }
  out.push_back(std::move(eps));
  return out;
}

std::vector<Irrep> s3_irreps() {
  std::vector<Irrep> out;
  auto one_dim = [](std::string name, auto chi) {
    Irrep ir;
    ir.name = std::move(name);
    ir.dim = 1;
    for (int g = 0; g < 6; ++g) ir.mats.push_back(scalar_mat(chi(g / 3, g % 3)));
    return ir;
  };
  out.push_back(one_dim("1", [](int, int) { return 1.0; }));
  out.push_back(one_dim("-1", [](int a, int) { return a ? -1.0 : 1.0; }));
  Irrep eps;
  eps.name = "eps";
  eps.dim = 2;
  const double c = -0.5, s = std::sqrt(3.0) / 2.0;
  Eigen::Matrix2cd gr, gm;
  gr << c, -s, s, c;
  gm << 1, 0, 0, -1;
  for (int g = 0; g < 6; ++g) {
    Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
    if (g / 3) v = v * gm;
    for (int k = 0; k < g % 3; ++k) v = v * gr;
    eps.mats.push_back(v);
  }
  out.push_back(std::move(eps));
  return out;
}

std::string root_of_unity_name(int k, int n);

/// Irreps of an abelian set of members closed under the parent group's
/// product, via greedy cyclic-factor decomposition.
std::vector<Irrep> abelian_irreps_impl(const FiniteGroup& g, const std::vector<int>& members) {
  const int m = static_cast<int>(members.size());
  std::vector<int> gens, orders;
  std::set<int> span = {0};
  while (static_cast<int>(span.size()) < m) {
    int best = -1, best_ord = 0;
    for (int x : members) {
      if (span.count(x)) continue;
      int ord = g.element_order(x);
      if (ord > best_ord) {
        best_ord = ord;
        best = x;
      }
    }
    gens.push_back(best);
    orders.push_back(best_ord);
    std::set<int> grown;
    for (int a : span)
      for (int p = 0, x = 0; p < best_ord; ++p, x = g.op(x, best)) grown.insert(g.op(a, x));
    span = std::move(grown);
  }
  const int nf = static_cast<int>(gens.size());

  // Exponent tuple for each member, found by enumerating products.
  std::map<int, std::vector<int>> expo;
  std::vector<int> tup(nf, 0);
  for (bool done = false; !done;) {
    int x = 0;
    for (int i = 0; i < nf; ++i)
      for (int p = 0; p < tup[i]; ++p) x = g.op(x, gens[i]);
    expo.emplace(x, tup);
    done = true;
    for (int i = nf - 1; i >= 0; --i) {
      if (++tup[i] < orders[i]) {
        done = false;
        break;
      }
      tup[i] = 0;
    }
  }

  std::vector<Irrep> out;
  std::vector<int> k(nf, 0);
  for (bool done = false; !done;) {
    Irrep ir;
    ir.dim = 1;
    std::ostringstream nm;
    if (nf > 1) nm << "(";
    for (int i = 0; i < nf; ++i) nm << (i ? "," : "") << root_of_unity_name(k[i], orders[i]);
    if (nf > 1) nm << ")";
    ir.name = nm.str();
    for (int x : members) {
      const auto& e = expo.at(x);
      double phase = 0;
      for (int i = 0; i < nf; ++i) phase += 2.0 * kPi * k[i] * e[i] / orders[i];
      Eigen::MatrixXcd mat(1, 1);
      mat(0, 0) = std::polar(1.0, phase);
      ir.mats.push_back(mat);
    }
    out.push_back(std::move(ir));
    done = true;
    for (int i = nf - 1; i >= 0; --i) {
      if (++k[i] < orders[i]) {
        done = false;
        break;
      }
      k[i] = 0;
    }
  }
  return out;
}

std::string root_of_unity_name(int k, int n) {
  if (n == 1 || k == 0) return "1";
  if (n == 2) return "-1";
  if (n == 3) return k == 1 ? "w" : "w*";
  if (n == 4) return k == 1 ? "i" : (k == 2 ? "-1" : "-i");
  std::ostringstream os;
  os << "w^" << k;
  return os.str();
}

}  // namespace

bool Subgroup::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

int Subgroup::index_in(int g) const {
  auto it = std::lower_bound(members.begin(), members.end(), g);
  if (it == members.end() || *it != g) return -1;
  return static_cast<int>(it - members.begin());
}

FiniteGroup FiniteGroup::named(std::string_view name) {
  FiniteGroup g;
  if (name == "d4") {
    g.names_ = {"e", "r", "r2", "r3", "m", "mr", "mr2", "mr3"};
    g.mul_ = dihedral_table(4, false);
  } else if (name == "q8") {
    g.names_ = {"1", "i", "-1", "-i", "j", "-k", "-j", "k"};
    g.mul_ = dihedral_table(4, true);
  } else if (name == "s3") {
    g.names_ = {"e", "r", "r2", "m", "mr", "mr2"};
    g.mul_ = dihedral_table(3, false);
  } else if (name == "z2") {
    g.names_ = {"e", "x"};
    g.mul_ = cyclic_table(2);
  } else if (name == "z4") {
    g.names_ = {"e", "g", "g2", "g3"};
    g.mul_ = cyclic_table(4);
  } else if (name == "z2xz2") {
    g.names_ = {"e", "x", "y", "xy"};
    g.mul_ = {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
  } else {
    throw std::invalid_argument("unknown group name: " + std::string(name));
  }
  g.label_ = std::string(name);
  g.n_ = static_cast<int>(g.names_.size());
  g.inv_.assign(g.n_, -1);
  g.validate();
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names, std::vector<int> table,
                                    std::string label) {
  FiniteGroup g;
  g.n_ = static_cast<int>(names.size());
  if (table.size() != static_cast<size_t>(g.n_) * g.n_)
    throw std::invalid_argument("multiplication table size mismatch");
  g.names_ = std::move(names);
  g.mul_ = std::move(table);
  g.label_ = std::move(label);
  g.inv_.assign(g.n_, -1);
  g.validate();
  return g;
}

void FiniteGroup::validate() const {
  const int n = n_;
  for (int v : mul_)
    if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
  for (int a = 0; a < n; ++a)
    if (op(0, a) != a || op(a, 0) != a)
      throw std::invalid_argument("element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (op(op(a, b), c) != op(a, op(b, c)))
          throw std::invalid_argument("multiplication table is not associative");
  auto* inv = const_cast<std::vector<int>*>(&inv_);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (op(a, b) == 0) {
        if (op(b, a) != 0) throw std::invalid_argument("one-sided inverse");
        (*inv)[a] = b;
      }
    if ((*inv)[a] < 0) throw std::invalid_argument("missing inverse");
  }
}

int FiniteGroup::element_order(int g) const {
  int k = 1, x = g;
  while (x != 0) {
    x = op(x, g);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (op(a, b) != op(b, a)) return false;
  return true;
}

int FiniteGroup::index_of(std::string_view name) const {
  for (int g = 0; g < n_; ++g)
    if (names_[g] == name) return g;
  return -1;
}

const std::vector<ConjugacyClass>& FiniteGroup::classes() const {
  if (!classes_.empty()) return classes_;
  std::vector<bool> seen(n_, false);
  std::vector<ConjugacyClass> out;
  for (int g = 0; g < n_; ++g) {
    if (seen[g]) continue;
    ConjugacyClass c;
    std::set<int> orbit;
    for (int x = 0; x < n_; ++x) orbit.insert(conjugate(x, g));
    c.members.assign(orbit.begin(), orbit.end());
    c.rep = c.members.front();
    for (int m : c.members) seen[m] = true;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.rep < b.rep;
  });
  classes_ = std::move(out);
  class_of_.assign(n_, -1);
  for (size_t i = 0; i < classes_.size(); ++i)
    for (int m : classes_[i].members) class_of_[m] = static_cast<int>(i);
  return classes_;
}

int FiniteGroup::class_of(int g) const {
  classes();
  return class_of_[g];
}

Subgroup FiniteGroup::centralizer(int g) const {
  Subgroup h;
  for (int x = 0; x < n_; ++x)
    if (op(x, g) == op(g, x)) h.members.push_back(x);
  return h;
}

Subgroup FiniteGroup::center() const {
  Subgroup h;
  for (int x = 0; x < n_; ++x) {
    bool central = true;
    for (int y = 0; y < n_ && central; ++y) central = op(x, y) == op(y, x);
    if (central) h.members.push_back(x);
  }
  return h;
}

Subgroup FiniteGroup::generated(std::span<const int> gens) const {
  std::set<int> members = {0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(members.begin(), members.end());
    for (int a : cur)
      for (int s : gens)
        if (members.insert(op(a, s)).second) grew = true;
  }
  Subgroup h;
  h.members.assign(members.begin(), members.end());
  return h;
}

Subgroup FiniteGroup::whole() const {
  Subgroup h;
  h.members.resize(n_);
  for (int i = 0; i < n_; ++i) h.members[i] = i;
  return h;
}

const std::vector<Irrep>& FiniteGroup::irreps() const {
  if (!irreps_.empty()) return irreps_;
  if (label_ == "d4") {
    irreps_ = d4_irreps();
  } else if (label_ == "q8") {
    irreps_ = q8_irreps();
  } else if (label_ == "s3") {
    irreps_ = s3_irreps();
  } else if (is_abelian()) {
    irreps_ = abelian_irreps_impl(*this, whole().members);
  } else {
    irreps_ = compute_irreps_generic(*this);
  }
  return irreps_;
}

Eigen::MatrixXcd FiniteGroup::character_table() const {
  const auto& irr = irreps();
  const auto& cls = classes();
  Eigen::MatrixXcd t(irr.size(), cls.size());
  for (size_t i = 0; i < irr.size(); ++i)
    for (size_t j = 0; j < cls.size(); ++j) t(i, j) = irr[i].character(cls[j].rep);
  return t;
}

std::vector<Irrep> subgroup_irreps(const FiniteGroup& g, const Subgroup& h) {
  const int m = h.order();
  if (m == g.order()) {
    std::vector<Irrep> out = g.irreps();
    return out;  // members are 0..n-1, so element index equals member position
  }

  // Abelian case: decompose into cyclic factors on greedily chosen generators.
  bool abelian = true;
  for (int a : h.members)
    for (int b : h.members)
      if (g.op(a, b) != g.op(b, a)) abelian = false;

  if (abelian) return abelian_irreps_impl(g, h.members);

  // Non-abelian proper subgroup: solve on the restricted table.
  std::vector<std::string> names;
  std::vector<int> table(m * m);
  for (int i = 0; i < m; ++i) names.push_back(g.name(h.members[i]));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i * m + j] = h.index_in(g.op(h.members[i], h.members[j]));
  FiniteGroup sub = FiniteGroup::from_table(std::move(names), std::move(table), "sub");
  return compute_irreps_generic(sub);
}

Eigen::MatrixXcd subgroup_overlap_table(const FiniteGroup& g, const Subgroup& h) {
  auto sub = subgroup_irreps(g, h);
  const auto& irr = g.irreps();
  Eigen::MatrixXcd t(sub.size(), irr.size());
  for (size_t i = 0; i < sub.size(); ++i)
    for (size_t j = 0; j < irr.size(); ++j) {
      cx acc = 0;
      for (int p = 0; p < h.order(); ++p)
        acc += std::conj(sub[i].character(p)) * irr[j].character(h.members[p]);
      t(i, j) = acc;
    }
  return t;
}

std::vector<Irrep> compute_irreps_generic(const FiniteGroup& g, unsigned seed) {
  const int n = g.order();

  // Regular representation rho(x)|h> = |xh>.
  auto reg = [&](int x) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int h = 0; h < n; ++h) m(g.op(x, h), h) = 1;
    return m;
  };

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937 rng(seed + 977u * attempt);
    std::normal_distribution<double> dist;
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = cx(dist(rng), dist(rng));
    h = (h + h.adjoint().eval()) / 2;

    // Project onto the commutant of the regular representation.
    Eigen::MatrixXcd hc = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
      Eigen::MatrixXcd rx = reg(x);
      hc += rx * h * rx.adjoint();
    }
    hc /= n;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hc);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    // Cluster eigenvalues; each eigenspace carries exactly one irrep copy for
    // a generic commutant element.
    std::vector<Irrep> found;
    bool ok = true;
    int total = 0;
    for (int lo = 0; lo < n && ok;) {
      int hi = lo + 1;
      while (hi < n && std::abs(vals(hi) - vals(lo)) < 1e-8) ++hi;
      const int d = hi - lo;
      Eigen::MatrixXcd q = vecs.middleCols(lo, d);
      Irrep ir;
      ir.dim = d;
      for (int x = 0; x < n; ++x) ir.mats.push_back(q.adjoint() * reg(x) * q);
      // Invariance check: Q Q^dag rho Q must equal rho Q.
      for (int x = 0; x < n && ok; ++x)
        ok = (reg(x) * q - q * ir.mats[x]).norm() < 1e-8 * n;
      if (ok) {
        found.push_back(std::move(ir));
        total += d * d;
      }
      lo = hi;
    }
    if (!ok) continue;

    // Dedupe by character and check completeness.
    std::vector<Irrep> uniq;
    std::set<std::string> seen;
    for (auto& ir : found) {
      std::ostringstream key;
      for (int x = 0; x < n; ++x) {
        cx c = ir.character(x);
        key << llround(c.real() * 1e6) << "," << llround(c.imag() * 1e6) << ";";
      }
      if (seen.insert(key.str()).second) uniq.push_back(std::move(ir));
    }
    int sumsq = 0;
    for (const auto& ir : uniq) sumsq += ir.dim * ir.dim;
    if (sumsq != n) continue;

    std::sort(uniq.begin(), uniq.end(), [n](const Irrep& a, const Irrep& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      for (int x = 0; x < n; ++x) {
        cx ca = a.character(x), cb = b.character(x);
        if (std::abs(ca.real() - cb.real()) > 1e-6) return ca.real() > cb.real();
        if (std::abs(ca.imag() - cb.imag()) > 1e-6) return ca.imag() > cb.imag();
      }
      return false;
    });
    for (size_t i = 0; i < uniq.size(); ++i) {
      std::ostringstream nm;
      nm << "irr" << i;
      uniq[i].name = nm.str();
    }
    return uniq;
  }
  throw std::runtime_error("irrep computation failed to converge");
}

}  // namespace qd
