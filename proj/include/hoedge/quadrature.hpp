// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_QUADRATURE_HPP
#define HOEDGE_QUADRATURE_HPP

#include <array>
#include <vector>

namespace hoedge
{

//
// Quadrature on a p-simplex (p = 1, 2, 3). Points are barycentric
// coordinates with respect to the p+1 vertices; weights are normalized so
// that they sum to one, i.e. the rule approximates (1/|S|) int_S f.
//
struct QuadratureRule
{
  int simplex_dim = 1;
  int degree = 0;  // polynomials up to this degree are integrated exactly
  std::vector<std::array<double, 4>> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

// n-point Gauss-Legendre rule on a segment (exact to degree 2n-1).
QuadratureRule gauss_legendre(int npoints);

// Rule exact to the given degree. Segments use Gauss-Legendre; triangles use
// the symmetric 1-, 3- and 6-point rules up to degree 4 and a collapsed
// Gauss product above; tetrahedra use the 1- and 4-point rules up to degree 2
// and a collapsed Gauss product above.
QuadratureRule simplex_quadrature(int simplex_dim, int degree);

}  // namespace hoedge

#endif  // HOEDGE_QUADRATURE_HPP
