// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "hoedge/mesh.hpp"

using namespace hoedge;

namespace
{

std::map<std::vector<Index>, int> facet_counts(const Mesh &mesh)
{
  std::map<std::vector<Index>, int> count;
  const int d = mesh.dim();
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto s = mesh.simplex(t);
    for (int skip = 0; skip <= d; ++skip)
    {
      std::vector<Index> f;
      for (int i = 0; i <= d; ++i)
      {
        if (i != skip)
        {
          f.push_back(s[i]);
        }
      }
      std::sort(f.begin(), f.end());
      ++count[f];
    }
  }
  return count;
}

}  // namespace

TEST_CASE("2d unit square with h = 0.5")
{
  const Mesh mesh = generate_waveguide_mesh({2, 1.0, 1.0, 1.0, 0.5});
  CHECK(mesh.n_simplices() == 8);
  CHECK(mesh.n_nodes() == 9);
  CHECK(mesh.n_edges() == 16);
  // Euler characteristic of a disk
  CHECK(mesh.n_nodes() - mesh.n_edges() + mesh.n_simplices() == 1);
  CHECK(mesh.boundary_facets().size() == 8);
}

TEST_CASE("3d unit cube with h = 1")
{
  const Mesh mesh = generate_waveguide_mesh({3, 1.0, 1.0, 1.0, 1.0});
  CHECK(mesh.n_simplices() == 6);
  CHECK(mesh.n_nodes() == 8);
  CHECK(mesh.n_edges() == 19);
  CHECK(mesh.n_faces() == 18);
  // V - E + F - T = 1 for a ball
  CHECK(mesh.n_nodes() - mesh.n_edges() + mesh.n_faces() - mesh.n_simplices() == 1);
  CHECK(mesh.boundary_facets().size() == 12);
}

TEST_CASE("invalid specs are rejected")
{
  CHECK_THROWS(generate_waveguide_mesh({2, 1.0, 1.0, 1.0, 1.5}));
  CHECK_THROWS(generate_waveguide_mesh({2, 1.0, 1.0, 1.0, 0.0}));
  CHECK_THROWS(generate_waveguide_mesh({2, -1.0, 1.0, 1.0, 0.1}));
  CHECK_THROWS(generate_waveguide_mesh({4, 1.0, 1.0, 1.0, 0.1}));
}

TEST_CASE("cell size never exceeds h")
{
  const MeshSpec spec{3, 0.1004, 0.00508, 0.01016, 0.0031};
  const Mesh mesh = generate_waveguide_mesh(spec);
  for (const auto &e : mesh.edges())
  {
    const Vec3 d = mesh.node(e[1]) - mesh.node(e[0]);
    CHECK(std::abs(d[0]) <= spec.h);
    CHECK(std::abs(d[1]) <= spec.h);
    CHECK(std::abs(d[2]) <= spec.h);
  }
}

TEST_CASE("facets are shared by one or two simplices and boundary labels follow x")
{
  for (int dim : {2, 3})
  {
    const MeshSpec spec{dim, 2.0, 1.0, 0.5, 0.25};
    const Mesh mesh = generate_waveguide_mesh(spec);
    const auto count = facet_counts(mesh);
    std::size_t boundary = 0;
    for (const auto &[f, c] : count)
    {
      CHECK((c == 1 || c == 2));
      boundary += c == 1;
    }
    CHECK(boundary == mesh.boundary_facets().size());
    for (const auto &bf : mesh.boundary_facets())
    {
      std::vector<Index> f(bf.nodes.begin(), bf.nodes.begin() + dim);
      std::sort(f.begin(), f.end());
      CHECK(count.at(f) == 1);
      bool at_in = true, at_out = true;
      for (Index n : f)
      {
        at_in = at_in && mesh.node(n)[0] == 0.0;
        at_out = at_out && mesh.node(n)[0] == spec.length_x;
      }
      const BoundaryLabel expected =
          at_in ? BoundaryLabel::In : (at_out ? BoundaryLabel::Out : BoundaryLabel::Wall);
      CHECK(bf.label == expected);
    }
  }
}

TEST_CASE("simplex measures partition the box")
{
  for (int dim : {2, 3})
  {
    const MeshSpec spec{dim, 0.3, 0.2, 0.1, 0.037};
    const Mesh mesh = generate_waveguide_mesh(spec);
    double total = 0.0;
    for (Index t = 0; t < mesh.n_simplices(); ++t)
    {
      CHECK(mesh.measure(t) > 0.0);
      total += mesh.measure(t);
    }
    const double box = spec.length_x * spec.length_y * (dim == 3 ? spec.length_z : 1.0);
    CHECK(std::abs(total - box) <= 1e-12 * box);
  }
}

TEST_CASE("edge orientation sign follows global numbers")
{
  const std::array<Index, 4> t = {12, 32, 42, 22};
  CHECK(edge_orientation_sign(t, local_edge_index(3, 0, 3)) == 1);
  CHECK(local_edge_index(3, 3, 1) == local_edge_index(3, 1, 3));
  // local edge between node 32 (local 1) and node 22 (local 3)
  CHECK(edge_orientation_sign(t, local_edge_index(3, 1, 3)) == -1);
  const std::array<Index, 4> sorted = {1, 5, 9, 11};
  for (int e = 0; e < 6; ++e)
  {
    CHECK(edge_orientation_sign(sorted, e) == 1);
  }
  CHECK_THROWS(edge_orientation_sign(t, 6));
  CHECK_THROWS(edge_orientation_sign(std::array<Index, 3>{1, 2, 3}, 3));
}

TEST_CASE("orientation signs are invariant under order-preserving renumbering")
{
  const Mesh mesh = generate_waveguide_mesh({3, 1.0, 1.0, 1.0, 0.5});
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto s = mesh.simplex(t);
    std::array<Index, 4> mapped;
    for (int i = 0; i < 4; ++i)
    {
      mapped[i] = 3 * s[i] * s[i] + 7;
    }
    for (int e = 0; e < 6; ++e)
    {
      CHECK(edge_orientation_sign(s, e) == edge_orientation_sign(mapped, e));
    }
  }
}

TEST_CASE("shared edges have one canonical direction")
{
  const Mesh mesh = generate_waveguide_mesh({3, 1.0, 1.0, 1.0, 0.5});
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto s = mesh.simplex(t);
    const auto edges = mesh.simplex_edges(t);
    for (int e = 0; e < 6; ++e)
    {
      const auto [a, b] = kTetrahedronEdges[e];
      const auto &stored = mesh.edge(edges[e]);
      CHECK(stored[0] < stored[1]);
      CHECK(stored[0] == std::min(s[a], s[b]));
      CHECK(stored[1] == std::max(s[a], s[b]));
    }
  }
}

TEST_CASE("barycentric frame")
{
  SUBCASE("reference triangle")
  {
    const std::array<Vec3, 3> v = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}};
    const BarycentricFrame f(2, v);
    CHECK(f.gradient(0)[0] == doctest::Approx(-1.0));
    CHECK(f.gradient(0)[1] == doctest::Approx(-1.0));
    CHECK(f.measure() == doctest::Approx(0.5));
  }
  SUBCASE("random tetrahedra")
  {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
      std::array<Vec3, 4> v;
      for (auto &p : v)
      {
        p = {u(rng), u(rng), u(rng)};
      }
      const BarycentricFrame f(3, v);
      for (int j = 0; j < 4; ++j)
      {
        const auto l = f.lambda(v[j]);
        for (int i = 0; i < 4; ++i)
        {
          CHECK(l[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
        }
      }
      const Vec3 c = 0.25 * (v[0] + v[1] + v[2] + v[3]);
      const auto l = f.lambda(c);
      Vec3 gsum{};
      for (int i = 0; i < 4; ++i)
      {
        CHECK(l[i] == doctest::Approx(0.25));
        gsum = gsum + f.gradient(i);
      }
      CHECK(norm(gsum) <= 1e-12 * norm(f.gradient(0)));
    }
  }
  SUBCASE("degenerate simplex")
  {
    const std::array<Vec3, 3> v = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}};
    CHECK_THROWS(BarycentricFrame(2, v));
  }
}

TEST_CASE("mesh text format round trip")
{
  for (int dim : {2, 3})
  {
    const Mesh mesh = generate_waveguide_mesh({dim, 0.1004, 0.00508, 0.01016, 0.003});
    std::stringstream ss;
    write_mesh(ss, mesh);
    const Mesh back = read_mesh(ss);
    REQUIRE(back.n_nodes() == mesh.n_nodes());
    REQUIRE(back.n_simplices() == mesh.n_simplices());
    REQUIRE(back.boundary_facets().size() == mesh.boundary_facets().size());
    for (Index i = 0; i < mesh.n_nodes(); ++i)
    {
      CHECK(back.node(i) == mesh.node(i));
    }
    for (Index t = 0; t < mesh.n_simplices(); ++t)
    {
      CHECK(std::ranges::equal(back.simplex(t), mesh.simplex(t)));
    }
    for (std::size_t f = 0; f < mesh.boundary_facets().size(); ++f)
    {
      CHECK(back.boundary_facets()[f].nodes == mesh.boundary_facets()[f].nodes);
      CHECK(back.boundary_facets()[f].label == mesh.boundary_facets()[f].label);
    }
  }
}
