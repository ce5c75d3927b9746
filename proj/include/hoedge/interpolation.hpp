// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_INTERPOLATION_HPP
#define HOEDGE_INTERPOLATION_HPP

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "hoedge/dofmap.hpp"

namespace hoedge
{

using VectorField = std::function<CVec3(const Vec3 &)>;

//
// Interpolation of a field onto one simplex as a sparse rule
//   c_i = sum_l alpha_l u_{component_l}(points[point_l])  for dof_l = i.
// Entries are sorted by local dof index; quadrature points are shared by all
// dofs supported on the same entity.
//
struct InterpolationPlan
{
  int dim = 0;
  int degree = 0;
  int n_dofs = 0;
  std::vector<Vec3> points;
  std::vector<int> dof;
  std::vector<int> point;
  std::vector<int> component;
  std::vector<double> alpha;

  std::size_t n_ind() const { return alpha.size(); }
};

// Entity rules use degree 2r-1 on edges, 2r-2 on faces, 2r-3 on volumes,
// which integrates the moments of the degree-r space exactly.
InterpolationPlan build_plan(const Mesh &mesh, Index t, int degree);

std::vector<Complex> apply_plan(const InterpolationPlan &plan, const VectorField &u);

// Global interpolant, full dof vector. Dofs shared by several simplices
// are computed once.
Eigen::VectorXcd interpolate(const VectorField &u, const DofMap &dofs);

struct FieldSample
{
  CVec3 value{};
  CVec3 curl{};
};

// Value and curl of sum_i coeffs[g_i] w_i at local barycentric lambda in t.
FieldSample evaluate_field(const DofMap &dofs, const Eigen::VectorXcd &coeffs, Index t,
                           const std::array<double, 4> &lambda);

}  // namespace hoedge

#endif  // HOEDGE_INTERPOLATION_HPP
