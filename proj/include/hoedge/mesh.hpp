// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_MESH_HPP
#define HOEDGE_MESH_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hoedge/geometry.hpp"

namespace hoedge
{

// Boundary labels, numbered as in the mesh text format.
enum class BoundaryLabel : int
{
  In = 1,
  Out = 2,
  Wall = 3
};

//
// Rectangular waveguide box. The domain is (0,c) x (0,b) in 2d and
// (0,c) x (0,b) x (0,a) in 3d; waves travel along x.
//
struct MeshSpec
{
  int dim = 2;
  double length_x = 1.0;  // c
  double length_y = 1.0;  // b
  double length_z = 1.0;  // a, ignored in 2d
  double h = 0.5;
  // Cells per axis; 0 means ceil(L / h). Lets refinement studies double the
  // counts exactly so that meshes are nested.
  std::array<Index, 3> cells{0, 0, 0};
};

struct BoundaryFacet
{
  std::array<Index, 3> nodes{-1, -1, -1};  // first dim entries are used
  BoundaryLabel label = BoundaryLabel::Wall;
};

// Local sub-entity numbering. Face i of a tetrahedron is opposite node i.
inline constexpr std::array<std::array<int, 2>, 3> kTriangleEdges = {{{0, 1}, {0, 2}, {1, 2}}};
inline constexpr std::array<std::array<int, 2>, 6> kTetrahedronEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<std::array<int, 3>, 4> kTetrahedronFaces = {
    {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

std::span<const std::array<int, 2>> local_edges(int dim);

// Index of the local edge joining local nodes a and b (either order).
int local_edge_index(int dim, int a, int b);

//
// Simplicial mesh with globally numbered nodes. Edges are stored once as
// (low, high) global node pairs; in 3d faces are stored as sorted triples.
// Immutable after construction.
//
class Mesh
{
public:
  Mesh(int dim, std::vector<Vec3> nodes, std::vector<Index> simplices,
       std::vector<BoundaryFacet> boundary);

  int dim() const { return dim_; }
  int nodes_per_simplex() const { return dim_ + 1; }

  Index n_nodes() const { return static_cast<Index>(nodes_.size()); }
  Index n_simplices() const { return static_cast<Index>(simplices_.size()) / (dim_ + 1); }
  Index n_edges() const { return static_cast<Index>(edges_.size()); }
  Index n_faces() const { return static_cast<Index>(faces_.size()); }

  const Vec3 &node(Index i) const { return nodes_[i]; }
  std::span<const Vec3> nodes() const { return nodes_; }

  std::span<const Index> simplex(Index t) const
  {
    return {simplices_.data() + t * (dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
  }

  const std::array<Index, 2> &edge(Index e) const { return edges_[e]; }
  std::span<const std::array<Index, 2>> edges() const { return edges_; }
  const std::array<Index, 3> &face(Index f) const { return faces_[f]; }
  std::span<const std::array<Index, 3>> faces() const { return faces_; }

  // Global edge (face) ids in local edge (face) order.
  std::span<const Index> simplex_edges(Index t) const;
  std::span<const Index> simplex_faces(Index t) const;

  std::optional<Index> find_edge(Index a, Index b) const;
  std::optional<Index> find_face(Index a, Index b, Index c) const;

  std::span<const BoundaryFacet> boundary_facets() const { return boundary_; }

  double measure(Index t) const;
  Vec3 centroid(Index t) const;
  Vec3 lower_corner() const { return lower_; }
  Vec3 upper_corner() const { return upper_; }

private:
  int dim_;
  std::vector<Vec3> nodes_;
  std::vector<Index> simplices_;
  std::vector<BoundaryFacet> boundary_;
  std::vector<std::array<Index, 2>> edges_;
  std::vector<std::array<Index, 3>> faces_;
  std::vector<Index> simplex_edges_;
  std::vector<Index> simplex_faces_;
  Vec3 lower_{}, upper_{};

  struct PairHash
  {
    std::size_t operator()(const std::array<Index, 2> &k) const noexcept;
  };
  struct TripleHash
  {
    std::size_t operator()(const std::array<Index, 3> &k) const noexcept;
  };
  std::unordered_map<std::array<Index, 2>, Index, PairHash> edge_lookup_;
  std::unordered_map<std::array<Index, 3>, Index, TripleHash> face_lookup_;
};

// Structured Kuhn-split mesh of the waveguide box: n = ceil(L/h) cells per
// axis, each rectangle split in 2 triangles, each box in 6 tetrahedra.
// Global node numbers are lexicographic in (z,y,x) grid index, x fastest.
// The local vertex order within consecutive simplices cycles through all
// permutations, so that every mesh exercises the orientation logic.
Mesh generate_waveguide_mesh(const MeshSpec &spec);

// Every facet once, nodes sorted (unused entry -1), with the simplices on
// either side; simplices[1] is -1 on the boundary. Sorted by node tuple.
struct FacetIncidence
{
  std::array<Index, 3> nodes{-1, -1, -1};
  std::array<Index, 2> simplices{-1, -1};
};

std::vector<FacetIncidence> facet_incidence(const Mesh &mesh);

// +1 when the local edge runs from the smaller to the larger global node
// number, -1 otherwise.
int edge_orientation_sign(std::span<const Index> simplex_nodes, int local_edge);

// Returns the same mesh with node i renamed new_number[i] (a bijection).
Mesh relabel_nodes(const Mesh &mesh, std::span<const Index> new_number);

// Returns the same mesh with the local vertex order of simplex t replaced by
// a permutation drawn from a seeded generator. Global numbers are unchanged.
Mesh shuffle_local_order(const Mesh &mesh, unsigned seed);

//
// Barycentric coordinates of a simplex: affine lambda_i with constant
// gradients.
//
class BarycentricFrame
{
public:
  BarycentricFrame(int dim, std::span<const Vec3> vertices);
  static BarycentricFrame of(const Mesh &mesh, Index t);

  int dim() const { return dim_; }
  std::array<double, 4> lambda(const Vec3 &x) const;
  const std::array<Vec3, 4> &gradients() const { return grad_; }
  const Vec3 &gradient(int i) const { return grad_[i]; }
  const Vec3 &vertex(int i) const { return vertices_[i]; }
  double measure() const { return measure_; }
  Vec3 point(const std::array<double, 4> &lambda) const;

private:
  int dim_;
  std::array<Vec3, 4> vertices_{};
  std::array<Vec3, 4> grad_{};
  double measure_ = 0.0;
};

// Plain-text mesh format:
//   dim nv nt nbf
//   nv lines of coordinates (dim values)
//   nt lines of dim+1 global node indices
//   nbf lines of dim node indices followed by a label (1 in, 2 out, 3 wall)
void write_mesh(std::ostream &os, const Mesh &mesh);
Mesh read_mesh(std::istream &is);

}  // namespace hoedge

#endif  // HOEDGE_MESH_HPP
