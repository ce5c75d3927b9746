// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_EDGE_ELEMENTS_HPP
#define HOEDGE_EDGE_ELEMENTS_HPP

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hoedge/geometry.hpp"
#include "hoedge/mesh.hpp"

namespace hoedge
{

using Rational = boost::multiprecision::cpp_rational;

// Exponents of a barycentric monomial, indexed by simplex node.
using Exponents = std::array<int, 4>;

enum class EntityKind : int
{
  Edge = 0,
  Face = 1,
  Volume = 2
};

const char *to_string(EntityKind kind);

// Largest supported polynomial degree r in the given dimension.
int max_degree(int dim);
void check_supported(int dim, int degree);

// Number of dofs of the degree-r edge element on a d-simplex:
// (r+d)(r+d-1)...(r+2) r / (d-1)!.
int element_dimension(int dim, int degree);

// Dofs carried by one edge, one face and one volume respectively.
int dofs_per_edge(int degree);
int dofs_per_face(int degree);
int dofs_per_volume(int degree);

//
// Multi-index k = (k_1, ..., k_nu) with weight sum k_i.
//
struct MultiIndex
{
  std::vector<int> k;
  int weight() const;
};

// All multi-indices with nu components and the given weight, in
// lexicographically decreasing order: (w,0,..), (w-1,1,..), ...
std::vector<MultiIndex> multi_indices(int nu, int weight);

// (1/|S|) int_S prod lambda_i^{k_i} over a p-simplex S with p+1 = k.size()
// nodes: p! prod(k_i!) / (p + sum k_i)!.
Rational magic_integral(std::span<const int> k, int p);

// Reference entities, in terms of the nodes 0..d of a simplex whose nodes
// are listed by increasing global number.
std::vector<std::vector<int>> reference_faces(int dim);

//
// Generator lambda^k w^e with w^e = lambda_a grad lambda_b - lambda_b grad
// lambda_a for the reference edge e = (a, b), a < b.
//
struct Generator
{
  Exponents exponents{};
  int edge = 0;
  EntityKind kind = EntityKind::Edge;
  int entity = 0;  // reference edge, face or 0 for the volume
};

//
// Tangential moment (1/|S|) int_S (w . t) q over a support entity S. The
// tangent t runs between two nodes of S, and q is a barycentric monomial
// over the nodes of S.
//
struct DofDescriptor
{
  EntityKind kind = EntityKind::Edge;
  int entity = 0;
  std::array<int, 2> tangent{};  // reference nodes: from, to
  int tangent_edge = 0;          // reference edge carrying the tangent
  Exponents weight{};            // exponents of q
  std::vector<int> support;      // reference nodes of S, increasing
};

std::vector<Generator> build_generators(int degree, int dim);
std::vector<DofDescriptor> build_dofs(int degree, int dim);

//
// Generalized Vandermonde matrix V_ij = xi_i(w_j) and its inverse, both
// exact. Row-major n x n storage.
//
struct DualizingMatrix
{
  int degree = 1;
  int dim = 3;
  int n = 0;
  std::vector<Rational> V;
  std::vector<Rational> Vinv;
  bool integral = false;  // every Vinv entry is an integer

  const Rational &v(int i, int j) const { return V[i * n + j]; }
  const Rational &vinv(int i, int j) const { return Vinv[i * n + j]; }
};

DualizingMatrix assemble_vandermonde(int degree, int dim);

// Writes a rational matrix as CSV, one row per line, entries as p or p/q.
void write_rational_csv(std::ostream &os, std::span<const Rational> m, int n);

// p[i] = local index of the node with the i-th smallest global number.
std::vector<int> node_permutation(std::span<const Index> global_nodes);

// Maps construction order (entities examined by increasing global numbers)
// to local storage order (entities in local order). Dofs of one entity keep
// their relative order.
std::vector<int> dof_permutation(int degree, int dim, std::span<const Index> global_nodes);

//
// Everything that depends only on (dim, degree): generators, dofs, the exact
// dualizing matrix and the dual basis expanded in barycentric monomials.
// Instances are created once and shared.
//
class LocalElement
{
public:
  struct Term
  {
    Exponents exponents{};
    int gradient = 0;  // reference node whose grad lambda multiplies the monomial
    double coefficient = 0.0;
  };

  LocalElement(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(dofs_.size()); }

  const std::vector<Generator> &generators() const { return generators_; }
  const std::vector<DofDescriptor> &dofs() const { return dofs_; }
  const DualizingMatrix &dualizing_matrix() const { return dual_; }

  // Dual basis function j (construction order) as a sum of terms
  // coefficient * lambda^exponents * grad lambda_gradient.
  std::span<const Term> dual_terms(int j) const;

  int n_edge_dofs() const { return n_edge_; }
  int n_face_dofs() const { return n_face_; }
  int n_volume_dofs() const { return n_volume_; }

private:
  int dim_, degree_;
  std::vector<Generator> generators_;
  std::vector<DofDescriptor> dofs_;
  DualizingMatrix dual_;
  std::vector<Term> terms_;
  std::vector<int> term_offsets_;
  int n_edge_ = 0, n_face_ = 0, n_volume_ = 0;
};

// Cached, thread-safe access to the shared tables of (dim, degree).
const LocalElement &local_element(int dim, int degree);

//
// Dual basis on one simplex: generators built with the node permutation,
// combined with the columns of Vinv and stored in local order. The basis
// functions are in duality with the dofs oriented by global numbers.
//
class ElementBasis
{
public:
  ElementBasis(const LocalElement &element, const BarycentricFrame &frame,
               std::span<const Index> global_nodes);

  int size() const { return element_->size(); }
  const LocalElement &element() const { return *element_; }
  const BarycentricFrame &frame() const { return frame_; }
  std::span<const int> node_perm() const { return perm_; }
  std::span<const int> dof_perm() const { return dof_perm_; }

  // Values and curls of all basis functions (local order) at the point with
  // local barycentric coordinates lambda. In 2d the curl is stored in z.
  void evaluate(const std::array<double, 4> &lambda, std::span<Vec3> values,
                std::span<Vec3> curls) const;

private:
  const LocalElement *element_;
  BarycentricFrame frame_;
  std::vector<int> perm_;
  std::vector<int> dof_perm_;
  std::array<Vec3, 4> ref_grad_{};
};

// Convenience: values and curls at a Cartesian point x of simplex t.
// Throws if x lies outside the simplex beyond 1e-12 in barycentric terms.
void evaluate_dual_basis(const Mesh &mesh, Index t, int degree, const Vec3 &x,
                         std::vector<Vec3> &values, std::vector<Vec3> &curls);

}  // namespace hoedge

#endif  // HOEDGE_EDGE_ELEMENTS_HPP
