#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "qd/anyon.hpp"

using namespace qd;

namespace {

Eigen::Matrix2cd pauli_sym(const std::string& s) {
  const cx i(0, 1);
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  if (s == "1") return id;
  if (s == "-1") return -id;
  if (s == "x") return sx;
  if (s == "-x") return -sx;
  if (s == "y") return sy;
  if (s == "-y") return -sy;
  if (s == "iy") return i * sy;
  if (s == "-iy") return -i * sy;
  if (s == "z") return sz;
  if (s == "-z") return -sz;
  if (s == "iz") return i * sz;
  if (s == "-iz") return -i * sz;
  throw std::runtime_error("bad pauli symbol " + s);
}

struct Golden {
  const char* name;
  cx twist;
  int dim;
  // A(g) for g = e, r, r2, r3, m, mr, mr2, mr3; scalars for 1d anyons.
  std::array<const char*, 8> a;
};

const Golden kGold[] = {
    {"O", 1, 1, {"1", "1", "1", "1", "1", "1", "1", "1"}},
    {"S_r", 1, 1, {"1", "1", "1", "1", "-1", "-1", "-1", "-1"}},
    {"S_mr", 1, 1, {"1", "-1", "1", "-1", "-1", "1", "-1", "1"}},
    {"S_m", 1, 1, {"1", "-1", "1", "-1", "1", "-1", "1", "-1"}},
    {"S_eps", 1, 2, {"1", "-iy", "-1", "iy", "z", "-x", "-z", "x"}},
    {"Ot", 1, 1, {"1", "1", "1", "1", "1", "1", "1", "1"}},
    {"St_r", 1, 1, {"1", "1", "1", "1", "-1", "-1", "-1", "-1"}},
    {"St_mr", 1, 1, {"1", "-1", "1", "-1", "-1", "1", "-1", "1"}},
    {"St_m", 1, 1, {"1", "-1", "1", "-1", "1", "-1", "1", "-1"}},
    {"St_eps", -1, 2, {"1", "-iy", "-1", "iy", "z", "-x", "-z", "x"}},
    {"Psi_m", 1, 2, {"1", "x", "1", "x", "1", "x", "1", "x"}},
    {"Psit_m", -1, 2, {"1", "x", "1", "x", "-1", "-x", "-1", "-x"}},
    {"Phi_m", 1, 2, {"1", "iy", "-1", "-iy", "z", "x", "-z", "-x"}},
    {"Phit_m", -1, 2, {"1", "iy", "-1", "-iy", "-z", "-x", "z", "x"}},
    {"Psi_mr", 1, 2, {"1", "x", "1", "x", "x", "1", "x", "1"}},
    {"Psit_mr", -1, 2, {"1", "x", "1", "x", "-x", "-1", "-x", "-1"}},
    {"Phi_mr", 1, 2, {"1", "iy", "-1", "-iy", "-x", "z", "x", "-z"}},
    {"Phit_mr", -1, 2, {"1", "iy", "-1", "-iy", "x", "-z", "-x", "z"}},
    {"Psi_r", 1, 2, {"1", "1", "1", "1", "x", "x", "x", "x"}},
    {"Phi_r", cx(0, 1), 2, {"1", "iz", "-1", "-iz", "x", "y", "-x", "-y"}},
    {"Psit_r", -1, 2, {"1", "-1", "1", "-1", "x", "-x", "x", "-x"}},
    {"Phit_r", cx(0, -1), 2, {"1", "-iz", "-1", "iz", "x", "-y", "-x", "y"}},
};

}  // namespace

TEST_CASE("catalogue lists 22 anyons in the fixed order with correct data") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  REQUIRE(qd.num_anyons() == 22);
  int sumsq = 0;
  for (int idx = 0; idx < 22; ++idx) {
    const auto& a = qd.anyon(idx);
    CAPTURE(a.ascii);
    CHECK(a.ascii == kGold[idx].name);
    CHECK(a.index == idx);
    CHECK(a.dim == kGold[idx].dim);
    CHECK(std::abs(a.twist - kGold[idx].twist) < 1e-12);
    CHECK(qd.find(a.ascii) == idx);
    CHECK(qd.find(a.name) == idx);
    sumsq += a.dim * a.dim;
  }
  CHECK(sumsq == 64);
  CHECK(qd.vacuum() == 0);
  CHECK(qd.find("Psi_m") == 10);
  CHECK(qd.find("Ψ_m") == 10);
  CHECK(qd.find("garbage") == -1);
}

TEST_CASE("class and centralizer assignments") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  const auto& g = qd.group();
  // Class ids: 0={e}, 1={r2}, 2={r,r3}, 3={m,mr2}, 4={mr,mr3}.
  auto expect_class = [&](const char* name, int cls, int cent_order) {
    int idx = qd.find(name);
    REQUIRE(idx >= 0);
    CHECK(qd.anyon(idx).class_id == cls);
    CHECK(qd.centralizer(qd.anyon(idx).class_id).order() == cent_order);
  };
  expect_class("O", 0, 8);
  expect_class("S_eps", 0, 8);
  expect_class("Ot", 1, 8);
  expect_class("Psi_m", 3, 4);
  expect_class("Phit_mr", 4, 4);
  expect_class("Phi_r", 2, 4);
  CHECK(g.classes()[2].members == std::vector<int>{1, 3});
}

TEST_CASE("q map conjugates members to class representatives") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  const auto& g = qd.group();
  for (int x = 0; x < 8; ++x) {
    int q = qd.q_of(x);
    CHECK(g.conjugate(q, x) == g.classes()[g.class_of(x)].rep);
    // q is the smallest such index.
    for (int c = 0; c < q; ++c) CHECK(g.conjugate(c, x) != g.classes()[g.class_of(x)].rep);
  }
  CHECK(qd.q_of(g.index_of("m")) == 0);
  CHECK(qd.q_of(g.index_of("mr2")) == g.index_of("r"));
  CHECK(qd.q_of(g.index_of("r3")) == g.index_of("m"));
  CHECK(qd.q_of(g.index_of("mr3")) == g.index_of("r"));
}

TEST_CASE("A matrices match the reference table for every anyon and element") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  for (int idx = 0; idx < 22; ++idx) {
    const auto& gold = kGold[idx];
    for (int g = 0; g < 8; ++g) {
      CAPTURE(gold.name);
      CAPTURE(g);
      Eigen::MatrixXcd got = qd.a_matrix(idx, g);
      if (gold.dim == 1) {
        REQUIRE(got.rows() == 1);
        Eigen::Matrix2cd ref = pauli_sym(gold.a[g]);
        CHECK(std::abs(got(0, 0) - ref(0, 0)) < 1e-12);
      } else {
        REQUIRE(got.rows() == 2);
        CHECK((got - pauli_sym(gold.a[g])).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("on-site algebra relations") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  const auto& g = qd.group();
  for (int idx = 0; idx < 22; ++idx) {
    CAPTURE(idx);
    // A is a homomorphism.
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        CHECK((qd.a_matrix(idx, g.op(a, b)) - qd.a_matrix(idx, a) * qd.a_matrix(idx, b)).norm() <
              1e-12);
    // B projectors are exclusive and complete.
    int d = qd.anyon(idx).dim;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (int h = 0; h < 8; ++h) {
      sum += qd.b_matrix(idx, h);
      for (int h2 = 0; h2 < 8; ++h2) {
        Eigen::MatrixXcd prod = qd.b_matrix(idx, h) * qd.b_matrix(idx, h2);
        if (h == h2)
          CHECK((prod - qd.b_matrix(idx, h)).norm() < 1e-12);
        else
          CHECK(prod.norm() < 1e-12);
      }
    }
    CHECK(sum.isIdentity(1e-12));
    // A(g) B(h) = B(g h g^-1) A(g).
    for (int a = 0; a < 8; ++a)
      for (int h = 0; h < 8; ++h)
        CHECK((qd.a_matrix(idx, a) * qd.b_matrix(idx, h) -
               qd.b_matrix(idx, g.conjugate(a, h)) * qd.a_matrix(idx, a))
                  .norm() < 1e-12);
  }
}

TEST_CASE("flux projectors select class members") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  int psi_m = qd.find("Psi_m");
  const auto& g = qd.group();
  Eigen::MatrixXcd bm = qd.b_matrix(psi_m, g.index_of("m"));
  Eigen::MatrixXcd bmr2 = qd.b_matrix(psi_m, g.index_of("mr2"));
  CHECK(std::abs(bm(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(bm(1, 1)) < 1e-12);
  CHECK(std::abs(bmr2(1, 1) - 1.0) < 1e-12);
  CHECK(qd.b_matrix(psi_m, g.index_of("r")).norm() < 1e-12);
}

TEST_CASE("twist equals the scalar action of the class representative") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  const auto& g = qd.group();
  for (int idx = 0; idx < 22; ++idx) {
    const auto& a = qd.anyon(idx);
    int rep = g.classes()[a.class_id].rep;
    const Irrep& chi = qd.irrep_of(idx);
    int pos = qd.centralizer(a.class_id).index_in(rep);
    Eigen::MatrixXcd mat = chi.mats[pos];
    // Schur: the representative is central in its centralizer.
    CHECK((mat - a.twist * Eigen::MatrixXcd::Identity(chi.dim, chi.dim)).norm() < 1e-12);
  }
}

TEST_CASE("quantum double characters are orthonormal") {
  QuantumDouble qd(FiniteGroup::named("d4"));
  std::vector<std::vector<cx>> chars;
  for (int a = 0; a < 22; ++a) chars.push_back(qd.character_array(a));
  for (int a = 0; a < 22; ++a)
    for (int b = 0; b < 22; ++b) {
      cx ip = qd.character_inner(chars[a], chars[b]);
      CHECK(std::abs(ip - (a == b ? cx(1) : cx(0))) < 1e-10);
    }
}

TEST_CASE("s3 double enumerates 8 anyons with expected dimensions") {
  QuantumDouble qd(FiniteGroup::named("s3"));
  REQUIRE(qd.num_anyons() == 8);
  std::multiset<int> dims;
  int sumsq = 0;
  for (int a = 0; a < 8; ++a) {
    dims.insert(qd.anyon(a).dim);
    sumsq += qd.anyon(a).dim * qd.anyon(a).dim;
  }
  CHECK(dims == std::multiset<int>{1, 1, 2, 2, 2, 2, 3, 3});
  CHECK(sumsq == 36);
  // Characters stay orthonormal away from d4.
  std::vector<std::vector<cx>> chars;
  for (int a = 0; a < 8; ++a) chars.push_back(qd.character_array(a));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      CHECK(std::abs(qd.character_inner(chars[a], chars[b]) - (a == b ? cx(1) : cx(0))) < 1e-10);
}
