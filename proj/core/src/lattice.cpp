#include "qd/lattice.hpp"

#include <array>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qd {
namespace {

int dart_id(Dart d) { return d.edge * 2 + (d.fwd ? 1 : 0); }

std::string dart_token(const Lattice& l, Dart d) {
  return l.edge(d.edge).name + (d.fwd ? ">" : "<");
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("lattice: " + msg); }

}  // namespace

int Lattice::vertex_index(const std::string& name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_names_[v] == name) return v;
  return -1;
}

int Lattice::edge_index(const std::string& name) const {
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].name == name) return e;
  return -1;
}

int Lattice::face_index(const std::string& name) const {
  for (int f = 0; f < face_count(); ++f)
    if (faces_[f].name == name) return f;
  return -1;
}

int Lattice::dart_origin(Dart d) const {
  const LatticeEdge& e = edges_[d.edge];
  return d.fwd ? e.src : e.dst;
}

int Lattice::rotation_slot(Dart d) const {
  const std::vector<Dart>& rot = rot_[dart_origin(d)];
  for (int i = 0; i < static_cast<int>(rot.size()); ++i)
    if (rot[i] == d) return i;
  fail("dart " + dart_token(*this, d) + " missing from its rotation");
}

int Lattice::euler_characteristic() const {
  return vertex_count() - edge_count() + face_count();
}

int Lattice::face_at(Corner c) const { return corner_face_[c.vertex][c.slot]; }

std::vector<Corner> Lattice::corners_at(int v, int f) const {
  std::vector<Corner> out;
  for (int k = 0; k < degree(v); ++k)
    if (corner_face_[v][k] == f) out.push_back({v, k});
  return out;
}

std::vector<WordFactor> Lattice::word(Corner c) const {
  const std::vector<Dart>& rot = rot_[c.vertex];
  const int deg = static_cast<int>(rot.size());
  std::vector<WordFactor> out;
  out.reserve(deg);
  for (int j = 1; j <= deg; ++j) {
    Dart d = rot[(c.slot + j) % deg];
    // Outgoing darts contribute the inverse; incoming the value itself.
    out.push_back({d.edge, !d.fwd});
  }
  return out;
}

void Lattice::derive_faces() {
  faces_.clear();
  corner_face_.assign(vertex_count(), {});
  for (int v = 0; v < vertex_count(); ++v) corner_face_[v].assign(degree(v), -1);

  std::vector<bool> seen(2 * edge_count(), false);
  for (int e = 0; e < edge_count(); ++e) {
    for (bool fwd : {true, false}) {
      Dart start{e, fwd};
      if (seen[dart_id(start)]) continue;
      Face face;
      Dart d = start;
      do {
        seen[dart_id(d)] = true;
        face.boundary.push_back(d);
        Dart x = reverse(d);
        int vx = dart_origin(x);
        int deg = degree(vx);
        int k = (rotation_slot(x) - 1 + deg) % deg;
        corner_face_[vx][k] = static_cast<int>(faces_.size());
        d = rot_[vx][k];
      } while (!(d == start));
      face.name = "f" + std::to_string(faces_.size());
      faces_.push_back(std::move(face));
    }
  }
}

void Lattice::validate() const {
  std::vector<int> uses(2 * edge_count(), 0);
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].src == edges_[e].dst) fail("self-loop edge " + edges_[e].name);
  }
  for (int v = 0; v < vertex_count(); ++v) {
    for (Dart d : rot_[v]) {
      if (dart_origin(d) != v)
        fail("rotation of " + vertex_names_[v] + " lists dart " + dart_token(*this, d) +
             " which starts elsewhere");
      ++uses[dart_id(d)];
    }
  }
  for (int e = 0; e < edge_count(); ++e) {
    for (bool fwd : {true, false}) {
      int u = uses[dart_id({e, fwd})];
      if (u != 1)
        fail("dart " + dart_token(*this, {e, fwd}) + " appears " + std::to_string(u) +
             " times across rotations (want 1)");
    }
  }
  if (euler_characteristic() != 2)
    fail("Euler characteristic " + std::to_string(euler_characteristic()) +
         "; the model needs a sphere embedding");
}

Lattice Lattice::ladder(int segments) {
  if (segments < 1) fail("ladder needs at least one segment");
  const int n = segments;
  Lattice l;
  for (int i = 0; i <= n; ++i) l.vertex_names_.push_back("v" + std::to_string(i));
  // t_i: v_{i-1} -> v_i sits at index 2(i-1); b_i: v_i -> v_{i-1} at 2(i-1)+1.
  for (int i = 1; i <= n; ++i) {
    l.edges_.push_back({"t" + std::to_string(i), i - 1, i});
    l.edges_.push_back({"b" + std::to_string(i), i, i - 1});
  }
  auto t = [](int i) { return 2 * (i - 1); };
  auto b = [](int i) { return 2 * (i - 1) + 1; };
  l.rot_.resize(n + 1);
  l.rot_[0] = {{t(1), true}, {b(1), false}};
  for (int i = 1; i < n; ++i)
    l.rot_[i] = {{t(i + 1), true}, {t(i), false}, {b(i), true}, {b(i + 1), false}};
  l.rot_[n] = {{t(n), false}, {b(n), true}};
  l.derive_faces();
  l.validate();
  for (int i = 1; i <= n; ++i) {
    Corner c{i, (i == n) ? 0 : 1};  // gap after t_i<, a p_i corner
    l.faces_[l.face_at(c)].name = "p" + std::to_string(i);
  }
  l.outer_ = l.face_at({0, 0});
  l.faces_[l.outer_].name = "P_out";
  return l;
}

Lattice Lattice::planar() {
  Lattice l;
  l.vertex_names_ = {"u", "v", "w"};
  l.edges_ = {{"e1", 2, 0}, {"e2", 0, 1}, {"e3", 1, 2}, {"e4", 2, 1}};
  l.rot_ = {
      {{0, false}, {1, true}},             // u: e1<, e2>
      {{1, false}, {3, false}, {2, true}},  // v: e2<, e4<, e3>
      {{0, true}, {2, false}, {3, true}},   // w: e1>, e3<, e4>
  };
  l.derive_faces();
  l.validate();
  l.faces_[l.face_at({0, 1})].name = "p1";  // triangle e2 e3 e1
  l.faces_[l.face_at({1, 1})].name = "p2";  // 2-gon e3 e4
  l.outer_ = l.face_at({0, 0});
  l.faces_[l.outer_].name = "P_out";
  return l;
}

Lattice Lattice::parse(std::istream& in) {
  Lattice l;
  struct DartTok {
    std::string edge;
    bool fwd = true;
  };
  struct DeclaredFace {
    std::string name;
    std::vector<DartTok> boundary;
  };
  std::vector<DeclaredFace> declared;
  std::string outer_name;
  std::vector<std::pair<std::string, std::vector<DartTok>>> rotations;
  std::vector<std::array<std::string, 3>> edge_lines;

  std::string line;
  int lineno = 0;
  auto parse_dart = [&](std::string t) -> DartTok {
    if (t.size() < 2 || (t.back() != '>' && t.back() != '<'))
      fail("line " + std::to_string(lineno) + ": dart token " + t + " needs a > or < suffix");
    bool fwd = t.back() == '>';
    t.pop_back();
    return {t, fwd};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto want = [&](std::string& tok, const char* what) {
      if (!(ls >> tok)) fail("line " + std::to_string(lineno) + ": missing " + what);
    };
    if (kw == "vertex") {
      std::string name;
      want(name, "vertex name");
      if (l.vertex_index(name) >= 0) fail("duplicate vertex " + name);
      l.vertex_names_.push_back(name);
    } else if (kw == "edge") {
      std::array<std::string, 3> e;
      want(e[0], "edge name");
      want(e[1], "source vertex");
      want(e[2], "target vertex");
      edge_lines.push_back(e);
    } else if (kw == "rotation") {
      std::string v;
      want(v, "vertex name");
      std::vector<DartTok> toks;
      for (std::string t; ls >> t;) toks.push_back(parse_dart(t));
      rotations.emplace_back(v, std::move(toks));
    } else if (kw == "face") {
      std::string name;
      want(name, "face name");
      DeclaredFace f{name, {}};
      for (std::string t; ls >> t;) f.boundary.push_back(parse_dart(t));
      if (f.boundary.empty()) fail("face " + name + " declares no boundary");
      declared.push_back(std::move(f));
    } else if (kw == "outer") {
      want(outer_name, "face name");
    } else {
      fail("line " + std::to_string(lineno) + ": unknown keyword " + kw);
    }
  }

  for (auto& e : edge_lines) {
    int s = l.vertex_index(e[1]);
    int d = l.vertex_index(e[2]);
    if (s < 0 || d < 0) fail("edge " + e[0] + " references unknown vertex");
    if (l.edge_index(e[0]) >= 0) fail("duplicate edge " + e[0]);
    l.edges_.push_back({e[0], s, d});
  }
  auto resolve = [&](const DartTok& t) -> Dart {
    int e = l.edge_index(t.edge);
    if (e < 0) fail("unknown edge " + t.edge);
    return {e, t.fwd};
  };
  l.rot_.assign(l.vertex_count(), {});
  for (auto& [vname, toks] : rotations) {
    int v = l.vertex_index(vname);
    if (v < 0) fail("rotation references unknown vertex " + vname);
    if (!l.rot_[v].empty()) fail("duplicate rotation for " + vname);
    for (const DartTok& t : toks) l.rot_[v].push_back(resolve(t));
  }
  l.derive_faces();
  l.validate();

  // Declared faces must match a derived orbit up to a cyclic shift; the match
  // transfers the declared name.
  for (const DeclaredFace& df : declared) {
    std::vector<Dart> want;
    want.reserve(df.boundary.size());
    for (const DartTok& t : df.boundary) want.push_back(resolve(t));
    int found = -1;
    for (int f = 0; f < l.face_count() && found < 0; ++f) {
      const std::vector<Dart>& bd = l.faces_[f].boundary;
      if (bd.size() != want.size()) continue;
      for (size_t shift = 0; shift < bd.size(); ++shift) {
        bool ok = true;
        for (size_t i = 0; i < bd.size() && ok; ++i) ok = bd[(shift + i) % bd.size()] == want[i];
        if (ok) {
          found = f;
          break;
        }
      }
    }
    if (found < 0) fail("declared face " + df.name + " matches no derived face orbit");
    if (l.faces_[found].name[0] != 'f' || l.face_index(df.name) >= 0)
      fail("face " + df.name + " matches an orbit already claimed by " + l.faces_[found].name);
    l.faces_[found].name = df.name;
  }
  if (!outer_name.empty()) {
    l.outer_ = l.face_index(outer_name);
    if (l.outer_ < 0) fail("outer face " + outer_name + " not declared");
  }
  return l;
}

Lattice Lattice::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  return parse(in);
}

void Lattice::print(std::ostream& out) const {
  out << "vertices " << vertex_count() << ", edges " << edge_count() << ", faces " << face_count()
      << ", Euler characteristic " << euler_characteristic() << "\n";
  for (int v = 0; v < vertex_count(); ++v) {
    out << "rotation " << vertex_names_[v];
    for (Dart d : rot_[v]) out << " " << dart_token(*this, d);
    out << "\n";
  }
  for (int f = 0; f < face_count(); ++f) {
    out << "face " << faces_[f].name;
    for (Dart d : faces_[f].boundary) out << " " << dart_token(*this, d);
    if (f == outer_) out << "   (outer)";
    out << "\n";
  }
  for (int v = 0; v < vertex_count(); ++v) {
    for (int k = 0; k < degree(v); ++k) {
      out << "corner (" << vertex_names_[v] << "," << k << ") -> "
          << faces_[corner_face_[v][k]].name << ", word";
      for (WordFactor wf : word({v, k}))
        out << " " << edges_[wf.edge].name << (wf.incoming ? "" : "^-1");
      out << "\n";
    }
  }
}

}  // namespace qd
