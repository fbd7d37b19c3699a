#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qd/group.hpp"
#include "qd/lattice.hpp"
#include "qd/state.hpp"

using namespace qd;

namespace {

std::vector<Dart> boundary(const Lattice& l, const std::string& face) {
  return l.face(l.face_index(face)).boundary;
}

// Cyclic-shift-insensitive comparison of face boundaries.
bool same_cycle(const std::vector<Dart>& a, const std::vector<Dart>& b) {
  if (a.size() != b.size()) return false;
  for (size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) ok = a[(s + i) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

Dart fwd(const Lattice& l, const std::string& e) { return {l.edge_index(e), true}; }
Dart rev(const Lattice& l, const std::string& e) { return {l.edge_index(e), false}; }

}  // namespace

TEST_CASE("ladder faces and corners") {
  for (int n : {1, 2, 3}) {
    CAPTURE(n);
    Lattice l = Lattice::ladder(n);
    CHECK(l.vertex_count() == n + 1);
    CHECK(l.edge_count() == 2 * n);
    CHECK(l.face_count() == n + 1);
    CHECK(l.euler_characteristic() == 2);

    // Each plaquette p_i is a 2-gon running against both of its edges; the
    // outer face runs along every edge.
    for (int i = 1; i <= n; ++i) {
      auto p = boundary(l, "p" + std::to_string(i));
      REQUIRE(p.size() == 2);
      CHECK(same_cycle(p, {rev(l, "t" + std::to_string(i)), rev(l, "b" + std::to_string(i))}));
    }
    auto outer = boundary(l, "P_out");
    REQUIRE(static_cast<int>(outer.size()) == 2 * n);
    for (const Dart& d : outer) CHECK(d.fwd);
    CHECK(l.outer_face() == l.face_index("P_out"));
  }

  Lattice l = Lattice::ladder(2);
  const int pout = l.face_index("P_out");
  const int p1 = l.face_index("p1");
  const int p2 = l.face_index("p2");
  CHECK(l.face_at({0, 0}) == pout);
  CHECK(l.face_at({0, 1}) == p1);
  CHECK(l.face_at({1, 0}) == pout);
  CHECK(l.face_at({1, 1}) == p1);
  CHECK(l.face_at({1, 2}) == pout);
  CHECK(l.face_at({1, 3}) == p2);
  CHECK(l.face_at({2, 0}) == p2);
  CHECK(l.face_at({2, 1}) == pout);
  CHECK(l.corners_at(1, pout) == std::vector<Corner>{{1, 0}, {1, 2}});
}

TEST_CASE("planar graph faces") {
  Lattice l = Lattice::planar();
  CHECK(l.euler_characteristic() == 2);
  CHECK(same_cycle(boundary(l, "p1"), {fwd(l, "e2"), fwd(l, "e3"), fwd(l, "e1")}));
  CHECK(same_cycle(boundary(l, "p2"), {rev(l, "e3"), rev(l, "e4")}));
  CHECK(same_cycle(boundary(l, "P_out"), {fwd(l, "e4"), rev(l, "e2"), rev(l, "e1")}));
  CHECK(l.outer_face() == l.face_index("P_out"));
}

TEST_CASE("vertex words follow the rotation") {
  Lattice l = Lattice::ladder(2);
  // Word at the p1 corner of v1 starts just past the gap: b1^-1 b2 t2^-1 t1.
  auto w = l.word({1, 1});
  REQUIRE(w.size() == 4);
  CHECK(w[0].edge == l.edge_index("b1"));
  CHECK_FALSE(w[0].incoming);
  CHECK(w[1].edge == l.edge_index("b2"));
  CHECK(w[1].incoming);
  CHECK(w[2].edge == l.edge_index("t2"));
  CHECK_FALSE(w[2].incoming);
  CHECK(w[3].edge == l.edge_index("t1"));
  CHECK(w[3].incoming);

  Lattice pl = Lattice::planar();
  auto wu = pl.word({0, 1});
  REQUIRE(wu.size() == 2);
  CHECK(wu[0].edge == pl.edge_index("e1"));
  CHECK(wu[0].incoming);
  CHECK(wu[1].edge == pl.edge_index("e2"));
  CHECK_FALSE(wu[1].incoming);
}

TEST_CASE("face multiplication conjugates exactly the bordering corner words") {
  FiniteGroup g = FiniteGroup::named("d4");
  Rng rng(11);
  for (const Lattice& l : {Lattice::ladder(3), Lattice::planar()}) {
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> digs(l.edge_count());
      for (int& d : digs) d = pick(rng);
      int h = pick(rng);
      for (int f = 0; f < l.face_count(); ++f) {
        std::vector<int> after = digs;
        for (const Dart& d : l.face(f).boundary)
          after[d.edge] = d.fwd ? g.op(h, after[d.edge])
                                : g.op(after[d.edge], g.inverse(h));
        for (int v = 0; v < l.vertex_count(); ++v)
          for (int k = 0; k < l.degree(v); ++k) {
            Corner c{v, k};
            int w0 = word_value(g, l, c, digs);
            int w1 = word_value(g, l, c, after);
            if (l.face_at(c) == f)
              CHECK(w1 == g.op(g.op(h, w0), g.inverse(h)));
            else
              CHECK(w1 == w0);
          }
      }
    }
  }
}

TEST_CASE("text format round-trips and validates") {
  const char* text = R"(
# two-segment ladder
vertex v0
vertex v1
vertex v2
edge t1 v0 v1
edge b1 v1 v0
edge t2 v1 v2
edge b2 v2 v1
rotation v0 t1> b1<
rotation v1 t2> t1< b1> b2<
rotation v2 t2< b2>
face p1 t1< b1<
face p2 t2< b2<
face P_out t1> t2> b2> b1>
outer P_out
)";
  std::istringstream in(text);
  Lattice parsed = Lattice::parse(in);
  Lattice built = Lattice::ladder(2);
  CHECK(parsed.face_count() == built.face_count());
  for (const char* name : {"p1", "p2", "P_out"}) {
    CAPTURE(name);
    CHECK(same_cycle(boundary(parsed, name), boundary(built, name)));
  }
  CHECK(parsed.outer_face() == parsed.face_index("P_out"));

  auto parse_str = [](const std::string& s) {
    std::istringstream ss(s);
    return Lattice::parse(ss);
  };
  // Self-loops, missing darts and bad face declarations are rejected.
  CHECK_THROWS(parse_str("vertex a\nedge e a a\nrotation a e> e<\n"));
  CHECK_THROWS(parse_str("vertex a\nvertex b\nedge e a b\nrotation a e>\n"));
  CHECK_THROWS(parse_str(
      "vertex a\nvertex b\nedge e a b\nedge f a b\n"
      "rotation a e> f>\nrotation b e< f<\nface bogus e> f>\n"));
}

TEST_CASE("print emits faces and corner table") {
  std::ostringstream out;
  Lattice::ladder(1).print(out);
  std::string s = out.str();
  CHECK(s.find("P_out") != std::string::npos);
  CHECK(s.find("Euler characteristic 2") != std::string::npos);
  CHECK(s.find("corner (v0,0)") != std::string::npos);
}
