#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "qd/group.hpp"
#include "qd/lattice.hpp"
#include "qd/state.hpp"

using namespace qd;

namespace {

// Closed-form ladder ground state: sum over independent rung values with the
// top and bottom edge of each square equal. Built directly from amplitudes,
// independent of the projector code under test.
QState ladder_oracle(const FiniteGroup& g, int n) {
  std::vector<int> dims(2 * n, g.order());
  QState psi(dims);
  psi.amps().setZero();
  const int go = g.order();
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(go);
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  std::vector<int> digs(2 * n);
  for (std::size_t a = 0; a < count; ++a) {
    std::size_t rest = a;
    for (int i = 0; i < n; ++i) {
      int gi = static_cast<int>(rest % go);
      rest /= go;
      digs[2 * i] = gi;      // t_{i+1}
      digs[2 * i + 1] = gi;  // b_{i+1}
    }
    std::size_t idx = 0;
    for (int r = 0; r < 2 * n; ++r) idx = idx * go + digs[r];
    psi.amps()(static_cast<Eigen::Index>(idx)) = amp;
  }
  return psi;
}

QState planar_oracle(const FiniteGroup& g) {
  const int go = g.order();
  QState psi(std::vector<int>(4, go));
  psi.amps().setZero();
  const double amp = 1.0 / go;
  for (int a = 0; a < go; ++a)
    for (int b = 0; b < go; ++b) {
      // e1 = a, e2 = a, e3 = a*b, e4 = b
      std::size_t idx = ((static_cast<std::size_t>(a) * go + a) * go + g.op(a, b)) * go + b;
      psi.amps()(static_cast<Eigen::Index>(idx)) = amp;
    }
  return psi;
}

// Sparse column of a Hamiltonian term acting on basis vector j.
using Column = std::map<std::size_t, double>;

struct Term {
  bool is_vertex = false;
  int which = 0;
};

Column term_column(const FiniteGroup& g, const Lattice& l, const QState& shape, Term t,
                   std::size_t j) {
  std::vector<int> digs(l.edge_count());
  for (int e = 0; e < l.edge_count(); ++e) digs[e] = shape.digit(j, e);
  Column col;
  if (t.is_vertex) {
    if (word_value(g, l, {t.which, 0}, digs) == g.identity()) col[j] = 1.0;
    return col;
  }
  for (int h = 0; h < g.order(); ++h) {
    std::vector<int> nd = digs;
    for (const Dart& d : l.face(t.which).boundary)
      nd[d.edge] = d.fwd ? g.op(h, nd[d.edge]) : g.op(nd[d.edge], g.inverse(h));
    std::size_t idx = 0;
    for (int e = 0; e < l.edge_count(); ++e)
      idx = idx * static_cast<std::size_t>(g.order()) + nd[e];
    col[idx] += 1.0 / g.order();
  }
  return col;
}

Column compose(const FiniteGroup& g, const Lattice& l, const QState& shape, Term outer, Term inner,
               std::size_t j) {
  Column acc;
  for (auto& [mid, w] : term_column(g, l, shape, inner, j))
    for (auto& [fin, w2] : term_column(g, l, shape, outer, mid)) acc[fin] += w * w2;
  for (auto it = acc.begin(); it != acc.end();) {
    if (std::abs(it->second) < 1e-15)
      it = acc.erase(it);
    else
      ++it;
  }
  return acc;
}

}  // namespace

TEST_CASE("register primitives") {
  QState psi({2, 3, 2});
  CHECK(psi.size() == 12);
  psi.set_basis(std::array{1, 2, 0});
  CHECK(psi.digit(10, 0) == 1);
  CHECK(psi.distribution(1)[2] == doctest::Approx(1.0));

  Eigen::MatrixXcd had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  psi.apply_unary(2, had);
  CHECK(psi.norm2() == doctest::Approx(1.0));
  CHECK(psi.distribution(2)[1] == doctest::Approx(0.5));

  // A digit relabelling equals the corresponding permutation matrix.
  QState a({2, 3}), b({2, 3});
  Rng rng(3);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 6; ++i) a.amps()(i) = cx(gauss(rng), gauss(rng));
  a.normalize();
  b.amps() = a.amps();
  std::vector<int> perm = {2, 0, 1};
  a.apply_map(1, perm);
  Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(3, 3);
  for (int x = 0; x < 3; ++x) pm(perm[x], x) = 1.0;
  b.apply_unary(1, pm);
  CHECK((a.amps() - b.amps()).norm() == doctest::Approx(0.0));

  double p = a.project(0, 0);
  CHECK(p > 0.0);
  CHECK(a.norm2() == doctest::Approx(1.0));
  CHECK(a.distribution(0)[1] == doctest::Approx(0.0));
}

TEST_CASE("insert, remove and bell contraction") {
  QState psi({3});
  psi.insert_reg(0, 2, 1);
  CHECK(psi.num_regs() == 2);
  CHECK(psi.distribution(0)[1] == doctest::Approx(1.0));
  psi.remove_reg(0, 1);
  CHECK(psi.num_regs() == 1);
  CHECK(psi.distribution(0)[0] == doctest::Approx(1.0));

  // Maximally entangled ancilla pair contracts with certainty.
  QState bell({2, 2, 3});
  bell.amps().setZero();
  bell.amps()(0 * 6 + 0 * 3 + 2) = 1.0 / std::sqrt(2.0);
  bell.amps()(1 * 6 + 1 * 3 + 2) = 1.0 / std::sqrt(2.0);
  double prob = bell.bell_contract(0, 1);
  CHECK(prob == doctest::Approx(1.0));
  CHECK(bell.distribution(0)[2] == doctest::Approx(1.0));

  // A product basis state only has 1/d overlap with the Bell pair.
  QState prod({2, 2});
  prod.set_basis(std::array{0, 0});
  CHECK(prod.bell_contract(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("controlled maps and phases") {
  FiniteGroup g = FiniteGroup::named("d4");
  const int n = g.order();
  QState psi({n, n});
  Rng rng(5);
  std::normal_distribution<double> gauss;
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) psi.amps()(i) = cx(gauss(rng), gauss(rng));
  psi.normalize();
  QState ref = psi;

  // Left multiplication by the control value, then its inverse, is identity.
  std::vector<std::vector<int>> mul(n, std::vector<int>(n)), unmul = mul;
  for (int c = 0; c < n; ++c)
    for (int x = 0; x < n; ++x) {
      mul[c][x] = g.op(c, x);
      unmul[c][x] = g.op(g.inverse(c), x);
    }
  psi.apply_controlled_map(0, 1, mul);
  CHECK((psi.amps() - ref.amps()).norm() > 0.1);
  psi.apply_controlled_map(0, 1, unmul);
  CHECK((psi.amps() - ref.amps()).norm() == doctest::Approx(0.0));

  std::vector<int> regs = {0};
  psi.apply_phase(regs, [](std::span<const int> d) { return d[0] == 3 ? cx(-1, 0) : cx(1, 0); });
  psi.apply_phase(regs, [](std::span<const int> d) { return d[0] == 3 ? cx(-1, 0) : cx(1, 0); });
  CHECK((psi.amps() - ref.amps()).norm() == doctest::Approx(0.0));
}

TEST_CASE("ladder ground state equals the closed form and is stabilized") {
  FiniteGroup g = FiniteGroup::named("d4");
  for (int n : {2, 3}) {
    CAPTURE(n);
    Lattice l = Lattice::ladder(n);
    QState gs = ground_state(g, l);
    QState oracle = ladder_oracle(g, n);
    CHECK((gs.amps() - oracle.amps()).norm() < 1e-12);
    for (int v = 0; v < l.vertex_count(); ++v)
      CHECK(vertex_expectation(gs, g, l, v) == doctest::Approx(1.0).epsilon(1e-10));
    for (int f = 0; f < l.face_count(); ++f)
      CHECK(plaquette_expectation(gs, g, l, f) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("planar ground state equals the closed form and is stabilized") {
  FiniteGroup g = FiniteGroup::named("d4");
  Lattice l = Lattice::planar();
  QState gs = ground_state(g, l);
  QState oracle = planar_oracle(g);
  CHECK((gs.amps() - oracle.amps()).norm() < 1e-12);
  for (int v = 0; v < l.vertex_count(); ++v)
    CHECK(vertex_expectation(gs, g, l, v) == doctest::Approx(1.0).epsilon(1e-10));
  for (int f = 0; f < l.face_count(); ++f)
    CHECK(plaquette_expectation(gs, g, l, f) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("four-segment ladder ground state" * doctest::timeout(60)) {
  FiniteGroup g = FiniteGroup::named("d4");
  Lattice l = Lattice::ladder(4);
  QState gs = ground_state(g, l);
  QState oracle = ladder_oracle(g, 4);
  CHECK((gs.amps() - oracle.amps()).norm() < 1e-12);
  for (int v = 0; v < l.vertex_count(); ++v)
    CHECK(vertex_expectation(gs, g, l, v) == doctest::Approx(1.0).epsilon(1e-10));
  for (int f = 0; f < l.face_count(); ++f)
    CHECK(plaquette_expectation(gs, g, l, f) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("all Hamiltonian terms commute on the two-segment ladder") {
  FiniteGroup g = FiniteGroup::named("d4");
  Lattice l = Lattice::ladder(2);
  QState shape(std::vector<int>(l.edge_count(), g.order()));

  std::vector<Term> terms;
  for (int v = 0; v < l.vertex_count(); ++v) terms.push_back({true, v});
  for (int f = 0; f < l.face_count(); ++f) terms.push_back({false, f});

  const std::size_t dim = shape.size();
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t k = i + 1; k < terms.size(); ++k) {
      CAPTURE(i);
      CAPTURE(k);
      bool equal = true;
      for (std::size_t j = 0; j < dim && equal; ++j) {
        Column ab = compose(g, l, shape, terms[i], terms[k], j);
        Column ba = compose(g, l, shape, terms[k], terms[i], j);
        if (ab.size() != ba.size()) {
          equal = false;
          break;
        }
        for (auto& [idx, w] : ab) {
          auto it = ba.find(idx);
          if (it == ba.end() || std::abs(it->second - w) > 1e-12) {
            equal = false;
            break;
          }
        }
      }
      CHECK(equal);
    }
}

TEST_CASE("plaquette projector is idempotent and hermitian") {
  FiniteGroup g = FiniteGroup::named("d4");
  Lattice l = Lattice::ladder(2);
  Rng rng(17);
  std::normal_distribution<double> gauss;
  QState psi(std::vector<int>(l.edge_count(), g.order()));
  QState phi = psi;
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) {
    psi.amps()(i) = cx(gauss(rng), gauss(rng));
    phi.amps()(i) = cx(gauss(rng), gauss(rng));
  }
  psi.normalize();
  phi.normalize();
  for (int f = 0; f < l.face_count(); ++f) {
    QState once = psi;
    apply_plaquette_projector(once, g, l, f);
    QState twice = once;
    apply_plaquette_projector(twice, g, l, f);
    CHECK((once.amps() - twice.amps()).norm() < 1e-12);
    QState pphi = phi;
    apply_plaquette_projector(pphi, g, l, f);
    CHECK(std::abs(phi.inner(once) - pphi.inner(psi)) < 1e-12);
  }
}
