// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hoedge/edge_elements.hpp"
#include "hoedge/quadrature.hpp"

using namespace hoedge;

namespace
{

// Largest error of the rule over all barycentric monomials of total degree
// up to the rule degree, measured against the closed-form integral.
double max_monomial_error(const QuadratureRule &q)
{
  const int nv = q.simplex_dim + 1;
  double worst = 0.0;
  for (int deg = 0; deg <= q.degree; ++deg)
  {
    for (const auto &mi : multi_indices(nv, deg))
    {
      double sum = 0.0;
      for (int p = 0; p < q.size(); ++p)
      {
        double v = q.weights[p];
        for (int i = 0; i < nv; ++i)
        {
          v *= std::pow(q.points[p][i], mi.k[i]);
        }
        sum += v;
      }
      const double exact = magic_integral(mi.k, q.simplex_dim).convert_to<double>();
      worst = std::max(worst, std::abs(sum - exact) / exact);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("rules are exact to their degree")
{
  for (int sdim = 1; sdim <= 3; ++sdim)
  {
    for (int degree = 0; degree <= 12; ++degree)
    {
      const auto q = simplex_quadrature(sdim, degree);
      CAPTURE(sdim);
      CAPTURE(degree);
      CHECK(q.degree >= degree);
      CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == doctest::Approx(1.0));
      CHECK(max_monomial_error(q) < 1e-13);
      for (const auto &p : q.points)
      {
        double s = 0.0;
        for (int i = 0; i <= sdim; ++i)
        {
          CHECK(p[i] >= 0.0);
          s += p[i];
        }
        CHECK(s == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("symmetric low-order rules have the expected sizes")
{
  CHECK(gauss_legendre(2).size() == 2);
  CHECK(simplex_quadrature(2, 2).size() == 3);
  CHECK(simplex_quadrature(2, 4).size() == 6);
  CHECK(simplex_quadrature(3, 1).size() == 1);
  CHECK(simplex_quadrature(3, 2).size() == 4);
  CHECK_THROWS(simplex_quadrature(4, 1));
  CHECK_THROWS(gauss_legendre(0));
}
