// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hoedge
{

namespace
{

// Nodes and weights of Gauss-Legendre on [0,1], weights summing to 1.
void gauss_legendre_unit(int n, std::vector<double> &x, std::vector<double> &w)
{
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
  {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p0 = 1.0;
        p1 = z;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
      {
        break;
      }
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k)
    {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = 0.5 * (1.0 - z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp);  // (2/((1-z^2)p'^2)) / 2
  }
}

void add_orbit_21(QuadratureRule &q, double a, double w)
{
  const double b = 1.0 - 2.0 * a;
  q.points.push_back({a, a, b, 0.0});
  q.points.push_back({a, b, a, 0.0});
  q.points.push_back({b, a, a, 0.0});
  for (int i = 0; i < 3; ++i)
  {
    q.weights.push_back(w);
  }
}

QuadratureRule collapsed_triangle(int degree)
{
  const int n = (degree + 3) / 2;  // ceil((degree + 2) / 2)
  std::vector<double> x, w;
  gauss_legendre_unit(n, x, w);
  QuadratureRule q;
  q.simplex_dim = 2;
  q.degree = degree;
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      const double l1 = x[i];
      const double l2 = (1.0 - x[i]) * x[j];
      q.points.push_back({1.0 - l1 - l2, l1, l2, 0.0});
      q.weights.push_back(2.0 * w[i] * w[j] * (1.0 - x[i]));
    }
  }
  return q;
}

QuadratureRule collapsed_tetrahedron(int degree)
{
  const int n = (degree + 4) / 2;  // ceil((degree + 3) / 2)
  std::vector<double> x, w;
  gauss_legendre_unit(n, x, w);
  QuadratureRule q;
  q.simplex_dim = 3;
  q.degree = degree;
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      for (int k = 0; k < n; ++k)
      {
        const double l1 = x[i];
        const double l2 = (1.0 - x[i]) * x[j];
        const double l3 = (1.0 - x[i]) * (1.0 - x[j]) * x[k];
        q.points.push_back({1.0 - l1 - l2 - l3, l1, l2, l3});
        q.weights.push_back(6.0 * w[i] * w[j] * w[k] * (1.0 - x[i]) * (1.0 - x[i]) * (1.0 - x[j]));
      }
    }
  }
  return q;
}

}  // namespace

QuadratureRule gauss_legendre(int npoints)
{
  if (npoints < 1)
  {
    throw std::invalid_argument("gauss_legendre: need at least one point");
  }
  std::vector<double> x, w;
  gauss_legendre_unit(npoints, x, w);
  QuadratureRule q;
  q.simplex_dim = 1;
  q.degree = 2 * npoints - 1;
  for (int i = 0; i < npoints; ++i)
  {
    q.points.push_back({1.0 - x[i], x[i], 0.0, 0.0});
    q.weights.push_back(w[i]);
  }
  return q;
}

QuadratureRule simplex_quadrature(int simplex_dim, int degree)
{
  degree = std::max(degree, 0);
  switch (simplex_dim)
  {
    case 1:
      return gauss_legendre(degree / 2 + 1);
    case 2:
    {
      QuadratureRule q;
      q.simplex_dim = 2;
      if (degree <= 1)
      {
        q.degree = 1;
        q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0});
        q.weights.push_back(1.0);
        return q;
      }
      if (degree == 2)
      {
        q.degree = 2;
        add_orbit_21(q, 1.0 / 6.0, 1.0 / 3.0);
        return q;
      }
      if (degree <= 4)
      {
        q.degree = 4;
        add_orbit_21(q, 0.44594849091596488632, 0.22338158967801146570);
        add_orbit_21(q, 0.09157621350977074346, 0.10995174365532186764);
        return q;
      }
      return collapsed_triangle(degree);
    }
    case 3:
    {
      QuadratureRule q;
      q.simplex_dim = 3;
      if (degree <= 1)
      {
        q.degree = 1;
        q.points.push_back({0.25, 0.25, 0.25, 0.25});
        q.weights.push_back(1.0);
        return q;
      }
      if (degree == 2)
      {
        q.degree = 2;
        const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
        const double b = (5.0 - std::sqrt(5.0)) / 20.0;
        for (int i = 0; i < 4; ++i)
        {
          std::array<double, 4> p = {b, b, b, b};
          p[i] = a;
          q.points.push_back(p);
          q.weights.push_back(0.25);
        }
        return q;
      }
      return collapsed_tetrahedron(degree);
    }
    default:
      throw std::invalid_argument("simplex_quadrature: simplex dimension must be 1, 2 or 3");
  }
}

}  // namespace hoedge
