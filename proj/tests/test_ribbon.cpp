#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd/anyon.hpp"
#include "qd/lattice.hpp"
#include "qd/ribbon.hpp"
#include "qd/state.hpp"

using namespace qd;

namespace {

struct Fixture {
  FiniteGroup g = FiniteGroup::named("d4");
  QuantumDouble qd{FiniteGroup::named("d4")};
  Lattice l = Lattice::ladder(2);
  RibbonEngine eng{qd, l};
  QState gs = ground_state(g, l);

  RibbonPath path(Corner start, std::string_view spec) const {
    return RibbonPath::parse(l, start, spec);
  }
};

double fidelity(const QState& a, const QState& b) { return std::abs(a.inner(b)); }

// Creation path used throughout: from the left cap corner to the p1 site.
constexpr Corner kCap{0, 0};
constexpr Corner kSite{1, 1};

}  // namespace

TEST_CASE("path tracing derives corners and rejects bad moves") {
  Fixture fx;
  RibbonPath p = fx.path(kCap, "I:b1 X:b1");
  REQUIRE(p.corners().size() == 3);
  CHECK(p.corners()[1] == Corner{1, 2});
  CHECK(p.front() == kSite);
  CHECK_FALSE(p.closed());
  CHECK_FALSE(p.steps()[0].type_two);
  CHECK_FALSE(p.steps()[0].fwd);
  CHECK_FALSE(p.steps()[0].depart_after);
  CHECK(p.steps()[1].type_two);
  CHECK(p.steps()[1].crossed == Dart{fx.l.edge_index("b1"), true});
  CHECK(p.steps()[1].to_before);

  RibbonPath loop = fx.path(kCap, "I:t1 X:t2 X:b2 I:b1");
  CHECK(loop.closed());

  CHECK_THROWS(fx.path(kCap, "I:t2"));        // not incident to v0
  CHECK_THROWS(fx.path(kCap, "X:t2"));        // same, as a crossing
  CHECK_THROWS(fx.path({1, 0}, "I:b1"));      // b1 does not flank that gap
  CHECK_THROWS(fx.path(kCap, "B:t1"));        // unknown move kind
  CHECK_THROWS(fx.path({0, 7}, "I:t1"));      // bad slot
}

TEST_CASE("open pair projection succeeds with probability one over d squared") {
  Fixture fx;
  for (const char* name : {"Psi_m", "Phi_r", "S_eps", "Ot", "Psit_m", "O"}) {
    CAPTURE(name);
    const int a = fx.qd.find(name);
    REQUIRE(a >= 0);
    const int d = fx.qd.anyon(a).dim;
    QState psi = fx.gs;
    RibbonHandle h = fx.eng.create_pair(psi, a, fx.path(kCap, "I:b1 X:b1"));
    const double p = fx.eng.finalize(psi, h);
    CHECK(p == doctest::Approx(1.0 / (d * d)).epsilon(1e-10));
  }
}

TEST_CASE("flux pair appears at the ribbon ends") {
  Fixture fx;
  const int a = fx.qd.find("Psi_m");
  QState psi = fx.gs;
  RibbonHandle h = fx.eng.create_pair(psi, a, fx.path(kCap, "I:b1 X:b1"));
  REQUIRE(fx.eng.finalize(psi, h) > 0.0);

  const int m = fx.g.index_of("m");
  const int mr2 = fx.g.index_of("mr2");
  std::vector<double> back_word = word_distribution(psi, fx.g, fx.l, kCap);
  std::vector<double> front_word = word_distribution(psi, fx.g, fx.l, kSite);
  // The pair carries no preferred class representative: each end shows the
  // conjugacy class of m with equal weight on both elements.
  CHECK(back_word[m] == doctest::Approx(0.5));
  CHECK(back_word[mr2] == doctest::Approx(0.5));
  CHECK(front_word[m] == doctest::Approx(0.5));
  CHECK(front_word[mr2] == doctest::Approx(0.5));
  // Only the two end vertices are excited.
  CHECK(vertex_expectation(psi, fx.g, fx.l, 0) == doctest::Approx(0.0));
  CHECK(vertex_expectation(psi, fx.g, fx.l, 1) == doctest::Approx(0.0));
  CHECK(vertex_expectation(psi, fx.g, fx.l, 2) == doctest::Approx(1.0));
  // Away from the ends plaquettes stay in vacuum. At the two end sites the
  // whole-group charge projector links the m flux, so only the centralizer
  // half of its terms survives.
  CHECK(plaquette_expectation(psi, fx.g, fx.l, fx.l.face_index("p2")) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(plaquette_expectation(psi, fx.g, fx.l, fx.l.face_index("p1")) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(plaquette_expectation(psi, fx.g, fx.l, fx.l.outer_face()) ==
        doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("closed contractible loops act as the identity on the ground state") {
  Fixture fx;
  const char* loops[] = {
      "I:t1 X:t2 X:b2 I:b1",  // encircles v1, based at the cap
      "X:t1 X:t2 X:b2 X:b1",  // full pivot around v1, based at the p1 site
      "I:t1 X:t1 X:b1 I:b1",  // encircles v0
  };
  const Corner bases[] = {kCap, kSite, kCap};
  for (int which = 0; which < 3; ++which) {
    RibbonPath loop = fx.path(bases[which], loops[which]);
    REQUIRE(loop.closed());
    for (const char* name : {"O", "Ot", "S_m", "S_eps", "Psi_m", "Psit_m", "Phi_r"}) {
      CAPTURE(which);
      CAPTURE(name);
      QState psi = fx.gs;
      const double p = fx.eng.closed_loop(psi, fx.qd.find(name), loop);
      CHECK(p == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(fidelity(psi, fx.gs) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("pair creation is homotopy invariant") {
  Fixture fx;
  for (const char* name : {"Psi_m", "Psi_r", "Phi_r", "S_eps", "St_m"}) {
    CAPTURE(name);
    const int a = fx.qd.find(name);
    QState below = fx.gs, above = fx.gs;
    RibbonHandle hb = fx.eng.create_pair(below, a, fx.path(kCap, "I:b1 X:b1"));
    RibbonHandle ha = fx.eng.create_pair(above, a, fx.path(kCap, "I:t1 X:t1"));
    const double pb = fx.eng.finalize(below, hb);
    const double pa = fx.eng.finalize(above, ha);
    CHECK(pb == doctest::Approx(pa).epsilon(1e-10));
    CHECK(fidelity(below, above) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("middle-out construction matches the forward one and covers all rules") {
  Fixture fx;
  fx.eng.reset_coverage();
  struct Case {
    Corner start;
    const char* spec;
  };
  const Case cases[] = {
      {kCap, "I:b1 X:b1"},            // below, then pivot up
      {kCap, "I:t1 X:t1"},            // above, then pivot down
      {kCap, "I:t1 X:t1 X:b1 I:b1"},  // loop around v0
      {kSite, "I:t1 X:b1"},           // against the top edge, cross below
      {kSite, "I:b1 X:t1"},           // against the bottom edge, cross above
  };
  for (const Case& c : cases) {
    RibbonPath full = RibbonPath::parse(fx.l, c.start, c.spec);
    for (const char* name : {"Psi_m", "Phi_r", "S_eps", "Psit_r"}) {
      const std::string spec_s = c.spec, name_s = name;
      CAPTURE(spec_s);
      CAPTURE(name_s);
      const int a = fx.qd.find(name);
      QState fwd = fx.gs;
      RibbonHandle hf = fx.eng.create_pair(fwd, a, full);
      const double pf = fx.eng.finalize(fwd, hf);

      const auto& corners = full.corners();
      const auto& steps = full.steps();
      for (std::size_t split = 1; split <= steps.size(); ++split) {
        CAPTURE(split);
        // Front part: steps split..end traced from the split corner. Rear
        // part: steps 0..split applied as a rear extension.
        std::vector<RibbonMove> front_moves, back_moves;
        std::istringstream toks{std::string(c.spec)};
        std::vector<std::string> all;
        for (std::string t; toks >> t;) all.push_back(t);
        auto tok_to_move = [](const std::string& t) {
          return RibbonMove{t[0] == 'I' ? RibbonMove::Kind::travel : RibbonMove::Kind::cross,
                            t.substr(2)};
        };
        for (std::size_t i = split; i < all.size(); ++i) front_moves.push_back(tok_to_move(all[i]));
        for (std::size_t i = 0; i < split; ++i) back_moves.push_back(tok_to_move(all[i]));
        RibbonPath fpart = RibbonPath::trace(fx.l, corners[split], front_moves);
        RibbonPath bpart = RibbonPath::trace(fx.l, c.start, back_moves);

        QState mid = fx.gs;
        RibbonHandle hm = fx.eng.create_pair(mid, a, fpart);
        fx.eng.extend_back(mid, hm, bpart);
        const double pm = fx.eng.finalize(mid, hm);
        CHECK(pm == doctest::Approx(pf).epsilon(1e-10));
        CHECK(fidelity(mid, fwd) == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
  for (int v = 0; v < 16; ++v) {
    CAPTURE(v);
    CHECK(fx.eng.coverage()[v] > 0);
  }
}

TEST_CASE("front extensions compose like a single longer ribbon") {
  Fixture fx;
  for (const char* name : {"Psi_m", "Phi_r"}) {
    CAPTURE(name);
    const int a = fx.qd.find(name);
    QState whole = fx.gs, pieced = fx.gs;
    RibbonHandle hw = fx.eng.create_pair(whole, a, fx.path(kCap, "I:b1 X:b1 X:t1 I:t2"));
    RibbonHandle hp = fx.eng.create_pair(pieced, a, fx.path(kCap, "I:b1 X:b1"));
    fx.eng.extend_front(pieced, hp, fx.path(kSite, "X:t1 I:t2"));
    const double pw = fx.eng.finalize(whole, hw);
    const double pp = fx.eng.finalize(pieced, hp);
    CHECK(pw == doctest::Approx(pp).epsilon(1e-10));
    CHECK(fidelity(whole, pieced) == doctest::Approx(1.0).epsilon(1e-8));
  }
}
