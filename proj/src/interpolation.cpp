// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/interpolation.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "hoedge/quadrature.hpp"

namespace hoedge
{

namespace
{

int moment_degree(int degree, std::size_t support_size)
{
  // edge: 2r-1, face: 2r-2, volume: 2r-3
  return 2 * degree + 1 - static_cast<int>(support_size);
}

}  // namespace

InterpolationPlan build_plan(const Mesh &mesh, Index t, int degree)
{
  const int d = mesh.dim();
  const LocalElement &element = local_element(d, degree);
  const auto nodes = mesh.simplex(t);
  const auto perm = node_permutation(nodes);
  const auto dof_perm = dof_permutation(degree, d, nodes);

  InterpolationPlan plan;
  plan.dim = d;
  plan.degree = degree;
  plan.n_dofs = element.size();

  std::vector<int> order(element.size());
  for (int j = 0; j < element.size(); ++j)
  {
    order[dof_perm[j]] = j;
  }

  struct EntityPoints
  {
    int first = 0;
    QuadratureRule rule;
  };
  std::map<std::vector<int>, EntityPoints> entity_points;

  for (int i = 0; i < element.size(); ++i)
  {
    const DofDescriptor &desc = element.dofs()[order[i]];
    auto it = entity_points.find(desc.support);
    if (it == entity_points.end())
    {
      EntityPoints ep;
      ep.first = static_cast<int>(plan.points.size());
      const int sdim = static_cast<int>(desc.support.size()) - 1;
      ep.rule = simplex_quadrature(sdim, moment_degree(degree, desc.support.size()));
      for (const auto &bary : ep.rule.points)
      {
        Vec3 x{};
        for (int m = 0; m <= sdim; ++m)
        {
          x = x + bary[m] * mesh.node(nodes[perm[desc.support[m]]]);
        }
        plan.points.push_back(x);
      }
      it = entity_points.emplace(desc.support, std::move(ep)).first;
    }
    const EntityPoints &ep = it->second;
    const Vec3 tangent =
        mesh.node(nodes[perm[desc.tangent[1]]]) - mesh.node(nodes[perm[desc.tangent[0]]]);
    for (int p = 0; p < ep.rule.size(); ++p)
    {
      double q = ep.rule.weights[p];
      for (std::size_t m = 0; m < desc.support.size(); ++m)
      {
        const int e = desc.weight[desc.support[m]];
        for (int k = 0; k < e; ++k)
        {
          q *= ep.rule.points[p][m];
        }
      }
      for (int c = 0; c < d; ++c)
      {
        plan.dof.push_back(i);
        plan.point.push_back(ep.first + p);
        plan.component.push_back(c);
        plan.alpha.push_back(tangent[c] * q);
      }
    }
  }
  return plan;
}

std::vector<Complex> apply_plan(const InterpolationPlan &plan, const VectorField &u)
{
  std::vector<CVec3> values(plan.points.size());
  for (std::size_t p = 0; p < plan.points.size(); ++p)
  {
    values[p] = u(plan.points[p]);
  }
  std::vector<Complex> c(plan.n_dofs, Complex{});
  for (std::size_t l = 0; l < plan.n_ind(); ++l)
  {
    c[plan.dof[l]] += plan.alpha[l] * values[plan.point[l]][plan.component[l]];
  }
  return c;
}

Eigen::VectorXcd interpolate(const VectorField &u, const DofMap &dofs)
{
  const Mesh &mesh = dofs.mesh();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dofs.n_dofs());
  std::vector<char> done(dofs.n_dofs(), 0);
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto global = dofs.simplex_dofs(t);
    bool needed = false;
    for (Index g : global)
    {
      needed = needed || !done[g];
    }
    if (!needed)
    {
      continue;
    }
    const auto c = apply_plan(build_plan(mesh, t, dofs.degree()), u);
    for (std::size_t i = 0; i < global.size(); ++i)
    {
      if (!done[global[i]])
      {
        out[global[i]] = c[i];
        done[global[i]] = 1;
      }
    }
  }
  return out;
}

FieldSample evaluate_field(const DofMap &dofs, const Eigen::VectorXcd &coeffs, Index t,
                           const std::array<double, 4> &lambda)
{
  if (coeffs.size() != dofs.n_dofs())
  {
    throw std::invalid_argument("evaluate_field: expected a full dof vector");
  }
  const ElementBasis basis = dofs.basis(t);
  std::vector<Vec3> values(basis.size()), curls(basis.size());
  basis.evaluate(lambda, values, curls);
  const auto global = dofs.simplex_dofs(t);
  FieldSample s;
  for (int i = 0; i < basis.size(); ++i)
  {
    const Complex c = coeffs[global[i]];
    s.value = s.value + c * to_complex(values[i]);
    s.curl = s.curl + c * to_complex(curls[i]);
  }
  return s;
}

}  // namespace hoedge
