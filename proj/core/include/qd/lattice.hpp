#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qd {

/// Directed traversal of an edge. `fwd` means src -> dst. The dart (e, true)
/// starts at src(e); the dart (e, false) starts at dst(e).
struct Dart {
  int edge = -1;
  bool fwd = true;
  bool operator==(const Dart&) const = default;
};

struct LatticeEdge {
  std::string name;
  int src = -1;
  int dst = -1;
};

/// Gap between two consecutive darts of a vertex rotation: slot k sits after
/// rotation[k] and before rotation[(k+1) % deg] in counterclockwise order.
struct Corner {
  int vertex = -1;
  int slot = -1;
  bool operator==(const Corner&) const = default;
};

/// Face orbit of the map. `boundary` lists darts in traversal order with the
/// interior on the left; a forward dart means the edge is aligned with the
/// traversal, a reverse dart means it runs against it.
struct Face {
  std::string name;
  std::vector<Dart> boundary;
  bool aligned(int i) const { return boundary[i].fwd; }
  int size() const { return static_cast<int>(boundary.size()); }
};

/// One factor of a vertex word: the edge's group value if `incoming`, its
/// inverse otherwise. Multiply factors left to right.
struct WordFactor {
  int edge = -1;
  bool incoming = false;
};

/// Embedded graph on the sphere given as a rotation system: per vertex, the
/// counterclockwise cyclic order of outgoing darts. Faces are derived orbits
/// of next(d) = sigma^{-1}(reverse(d)), which traces each boundary with the
/// interior on the left. Self-loops are rejected; multi-edges are fine.
class Lattice {
 public:
  /// Quasi-1D ladder with `segments` >= 1 squares: vertices v0..vn, top edges
  /// t_i: v_{i-1} -> v_i, bottom edges b_i: v_i -> v_{i-1}. Faces come out as
  /// the 2-gons p1..pn plus the outer face P_out.
  static Lattice ladder(int segments);
  /// Three-vertex planar graph (u, v, w) with a doubled v-w edge: e1: w -> u,
  /// e2: u -> v, e3: v -> w, e4: w -> v. Faces: triangle p1 = (e1 e2 e3),
  /// 2-gon p2 = (e3 e4) and the outer face P_out.
  static Lattice planar();
  /// Parses the text format described in the README (vertex / edge / rotation
  /// / face / outer lines). Declared faces are checked against the derived
  /// orbits; mismatches throw std::runtime_error with a diagnostic.
  static Lattice parse(std::istream& in);
  static Lattice parse_file(const std::string& path);

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const;

  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const LatticeEdge& edge(int e) const { return edges_[e]; }
  int vertex_index(const std::string& name) const;
  int edge_index(const std::string& name) const;
  int face_index(const std::string& name) const;

  const std::vector<Dart>& rotation(int v) const { return rot_[v]; }
  int degree(int v) const { return static_cast<int>(rot_[v].size()); }
  /// Vertex a dart starts at.
  int dart_origin(Dart d) const;
  Dart reverse(Dart d) const { return {d.edge, !d.fwd}; }
  /// Position of dart d in the rotation of its origin vertex.
  int rotation_slot(Dart d) const;

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  int outer_face() const { return outer_; }
  /// Face whose boundary sweeps the given corner (each corner belongs to
  /// exactly one face orbit).
  int face_at(Corner c) const;
  /// All corners of face f at vertex v, in rotation order. May be empty or
  /// hold more than one entry (the outer face meets interior ladder vertices
  /// twice).
  std::vector<Corner> corners_at(int v, int f) const;

  /// Vertex word read from the given corner: factors for rotation slots
  /// k+1, k+2, ..., k+deg in order. Conjugating a face's edge values by h
  /// turns w into h w h^{-1} exactly when the corner borders that face.
  std::vector<WordFactor> word(Corner c) const;

  void print(std::ostream& out) const;

 private:
  Lattice() = default;
  void derive_faces();
  void validate() const;

  std::vector<std::string> vertex_names_;
  std::vector<LatticeEdge> edges_;
  std::vector<std::vector<Dart>> rot_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> corner_face_;  // [v][slot] -> face index
  int outer_ = -1;
};

}  // namespace qd
