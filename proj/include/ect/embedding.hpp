#pragma once

#include <optional>
#include <vector>

#include "ect/graph.hpp"
#include "ect/rational.hpp"

namespace ect {

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Directed edge-end. Dart 2e runs u->v of edge e, dart 2e+1 runs v->u.
using Dart = int;
inline Dart make_dart(EdgeId e, int side) { return 2 * e + side; }
inline EdgeId dart_edge(Dart d) { return d / 2; }
inline Dart reverse_dart(Dart d) { return d ^ 1; }
NodeId dart_tail(const Graph& g, Dart d);
NodeId dart_head(const Graph& g, Dart d);

/// Rotation system plus drawing data. Edges may carry interior polyline
/// points ("bends"), listed from edge.u towards edge.v.
struct Embedding {
  Graph graph;
  std::vector<std::vector<Dart>> rotation;          // by node id, counterclockwise
  std::vector<std::optional<Point>> coords;         // by node id
  std::vector<std::vector<Point>> bends;            // by edge id

  /// Position of each dart in the rotation of its tail.
  std::vector<int> rotation_index() const;
  /// Polyline of a dart from its tail to its head.
  std::vector<Point> dart_polyline(Dart d) const;
};

/// Rotation = counterclockwise order of the first segment of each edge-end.
/// Throws MissingCoordinates or EulerCheckFailed.
Embedding embed_from_coordinates(const Graph& g, const std::vector<std::optional<Point>>& coords,
                                 const std::vector<std::vector<Point>>& bends = {});

/// Like embed_from_coordinates but the rotation at listed nodes is given as
/// counterclockwise edge-id lists. Throws EulerCheckFailed on an invalid rotation.
Embedding embed_with_rotation(const Graph& g, const std::vector<std::optional<Point>>& coords,
                              const std::vector<std::vector<EdgeId>>& rotation_edges);

/// Assembles an embedding from explicit counterclockwise dart lists without validation.
Embedding make_embedding(const Graph& g, std::vector<std::vector<Dart>> rotation,
                         std::vector<std::optional<Point>> coords, std::vector<std::vector<Point>> bends);

/// Embedding restricted to a node subset (rotations filtered, geometry kept).
Embedding restrict_embedding(const Embedding& e, const NodeSet& keep);

struct Face {
  std::vector<Dart> darts;
  int length = 0;   // number of darts
  bool even = false;
  bool outer = false;
  int component = -1;
  Rational area2;   // twice the signed area; positive for counterclockwise walks
};

struct FaceSet {
  std::vector<Face> faces;
  std::vector<int> face_of_dart;  // by dart id, -1 for dead edges
};

/// Face walks: next(d) = clockwise neighbour of reverse(d) at the head of d.
/// The outer face of each component is the walk with the smallest signed area.
FaceSet faces(const Embedding& e);

/// Even iff the walk contains a twin edge or its parity sum is even.
Parity face_parity(const Embedding& e, const FaceSet& fs, int face);

/// Number of components with at least one edge, and whether Euler's formula
/// holds on each of them.
bool euler_holds(const Embedding& e, const FaceSet& fs);

struct DualGraph {
  Graph graph;                      // node i = face i; dual edge id = primal edge id
};
DualGraph dual_graph(const Embedding& e, const FaceSet& fs);

/// Edge ids on the boundary of a face, ascending, with multiplicity removed.
std::vector<EdgeId> face_edges(const FaceSet& fs, int face);
/// Tail nodes along the face walk.
std::vector<NodeId> face_nodes(const Embedding& e, const FaceSet& fs, int face);

}  // namespace ect
