// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hoedge
{

namespace
{

std::size_t mix(std::size_t seed, std::size_t v)
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::array<int, 4>> all_permutations(int n)
{
  std::array<int, 4> p = {0, 1, 2, 3};
  std::vector<std::array<int, 4>> out;
  do
  {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + n));
  return out;
}

// Facets appearing in exactly one simplex, labelled by position.
std::vector<BoundaryFacet> detect_boundary(int dim, const std::vector<Vec3> &nodes,
                                           const std::vector<Index> &simplices, double c)
{
  const int nv = dim + 1;
  std::map<std::array<Index, 3>, int> count;
  const Index nt = static_cast<Index>(simplices.size()) / nv;
  for (Index t = 0; t < nt; ++t)
  {
    for (int skip = 0; skip < nv; ++skip)
    {
      std::array<Index, 3> key = {-1, -1, -1};
      int m = 0;
      for (int i = 0; i < nv; ++i)
      {
        if (i != skip)
        {
          key[m++] = simplices[t * nv + i];
        }
      }
      std::sort(key.begin(), key.begin() + dim);
      ++count[key];
    }
  }
  const double tol = 1e-12 * c;
  std::vector<BoundaryFacet> out;
  for (const auto &[key, n] : count)
  {
    if (n != 1)
    {
      continue;
    }
    BoundaryFacet f;
    f.nodes = key;
    bool at_in = true, at_out = true;
    for (int i = 0; i < dim; ++i)
    {
      const double x = nodes[key[i]][0];
      at_in = at_in && std::abs(x) <= tol;
      at_out = at_out && std::abs(x - c) <= tol;
    }
    f.label = at_in ? BoundaryLabel::In : at_out ? BoundaryLabel::Out : BoundaryLabel::Wall;
    out.push_back(f);
  }
  return out;
}

void append_double(std::string &s, double v)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, end);
}

}  // namespace

std::span<const std::array<int, 2>> local_edges(int dim)
{
  if (dim == 2)
  {
    return kTriangleEdges;
  }
  if (dim == 3)
  {
    return kTetrahedronEdges;
  }
  throw std::invalid_argument("local_edges: dim must be 2 or 3");
}

int local_edge_index(int dim, int a, int b)
{
  if (a > b)
  {
    std::swap(a, b);
  }
  const auto edges = local_edges(dim);
  for (std::size_t i = 0; i < edges.size(); ++i)
  {
    if (edges[i][0] == a && edges[i][1] == b)
    {
      return static_cast<int>(i);
    }
  }
  throw std::out_of_range("local_edge_index: not an edge of the simplex");
}

std::size_t Mesh::PairHash::operator()(const std::array<Index, 2> &k) const noexcept
{
  return mix(std::hash<Index>{}(k[0]), std::hash<Index>{}(k[1]));
}

std::size_t Mesh::TripleHash::operator()(const std::array<Index, 3> &k) const noexcept
{
  return mix(mix(std::hash<Index>{}(k[0]), std::hash<Index>{}(k[1])), std::hash<Index>{}(k[2]));
}

Mesh::Mesh(int dim, std::vector<Vec3> nodes, std::vector<Index> simplices,
           std::vector<BoundaryFacet> boundary)
  : dim_(dim), nodes_(std::move(nodes)), simplices_(std::move(simplices)),
    boundary_(std::move(boundary))
{
  if (dim_ != 2 && dim_ != 3)
  {
    throw std::invalid_argument("Mesh: dim must be 2 or 3");
  }
  const int nv = dim_ + 1;
  if (simplices_.size() % nv != 0)
  {
    throw std::invalid_argument("Mesh: simplex array length is not a multiple of dim+1");
  }
  const Index nn = n_nodes();
  for (Index v : simplices_)
  {
    if (v < 0 || v >= nn)
    {
      throw std::out_of_range("Mesh: simplex references a missing node");
    }
  }

  lower_ = upper_ = nodes_.empty() ? Vec3{} : nodes_.front();
  for (const auto &x : nodes_)
  {
    for (int c = 0; c < 3; ++c)
    {
      lower_[c] = std::min(lower_[c], x[c]);
      upper_[c] = std::max(upper_[c], x[c]);
    }
  }

  const auto ledges = local_edges(dim_);
  const Index nt = n_simplices();
  simplex_edges_.reserve(nt * ledges.size());
  for (Index t = 0; t < nt; ++t)
  {
    const auto s = simplex(t);
    for (const auto &le : ledges)
    {
      std::array<Index, 2> key = {s[le[0]], s[le[1]]};
      if (key[0] > key[1])
      {
        std::swap(key[0], key[1]);
      }
      if (key[0] == key[1])
      {
        throw std::invalid_argument("Mesh: simplex with repeated node");
      }
      auto [it, inserted] = edge_lookup_.try_emplace(key, n_edges());
      if (inserted)
      {
        edges_.push_back(key);
      }
      simplex_edges_.push_back(it->second);
    }
    if (dim_ == 3)
    {
      for (const auto &lf : kTetrahedronFaces)
      {
        std::array<Index, 3> key = {s[lf[0]], s[lf[1]], s[lf[2]]};
        std::sort(key.begin(), key.end());
        auto [it, inserted] = face_lookup_.try_emplace(key, n_faces());
        if (inserted)
        {
          faces_.push_back(key);
        }
        simplex_faces_.push_back(it->second);
      }
    }
  }
  for (auto &f : boundary_)
  {
    std::sort(f.nodes.begin(), f.nodes.begin() + dim_);
  }
}

std::span<const Index> Mesh::simplex_edges(Index t) const
{
  const std::size_t ne = dim_ == 2 ? 3 : 6;
  return {simplex_edges_.data() + t * ne, ne};
}

std::span<const Index> Mesh::simplex_faces(Index t) const
{
  if (dim_ != 3)
  {
    throw std::logic_error("Mesh::simplex_faces: faces are only tabulated in 3d");
  }
  return {simplex_faces_.data() + t * 4, 4};
}

std::optional<Index> Mesh::find_edge(Index a, Index b) const
{
  if (a > b)
  {
    std::swap(a, b);
  }
  const auto it = edge_lookup_.find({a, b});
  if (it == edge_lookup_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

std::optional<Index> Mesh::find_face(Index a, Index b, Index c) const
{
  std::array<Index, 3> key = {a, b, c};
  std::sort(key.begin(), key.end());
  const auto it = face_lookup_.find(key);
  if (it == face_lookup_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

double Mesh::measure(Index t) const
{
  return BarycentricFrame::of(*this, t).measure();
}

Vec3 Mesh::centroid(Index t) const
{
  Vec3 c{};
  for (Index v : simplex(t))
  {
    c = c + nodes_[v];
  }
  return (1.0 / (dim_ + 1)) * c;
}

Mesh generate_waveguide_mesh(const MeshSpec &spec)
{
  if (spec.dim != 2 && spec.dim != 3)
  {
    throw std::invalid_argument("generate_waveguide_mesh: dim must be 2 or 3");
  }
  const std::array<double, 3> len = {spec.length_x, spec.length_y,
                                     spec.dim == 3 ? spec.length_z : 1.0};
  for (int c = 0; c < spec.dim; ++c)
  {
    if (!(len[c] > 0.0))
    {
      throw std::invalid_argument("generate_waveguide_mesh: extents must be positive");
    }
  }
  if (!(spec.h > 0.0))
  {
    throw std::invalid_argument("generate_waveguide_mesh: h must be positive");
  }
  const double max_extent = *std::max_element(len.begin(), len.begin() + spec.dim);
  if (spec.h > max_extent)
  {
    throw std::invalid_argument("generate_waveguide_mesh: h exceeds the domain extent");
  }

  std::array<Index, 3> n = {1, 1, 1};
  for (int c = 0; c < spec.dim; ++c)
  {
    // Guard against ceil(39.0000000001) style round-off on exact ratios.
    const double ratio = len[c] / spec.h;
    n[c] = std::max<Index>(1, static_cast<Index>(std::ceil(ratio - 1e-10 * ratio)));
    if (spec.cells[c] > 0)
    {
      n[c] = spec.cells[c];
    }
    else if (spec.cells[c] < 0)
    {
      throw std::invalid_argument("generate_waveguide_mesh: negative cell count");
    }
  }
  const Index nx = n[0], ny = n[1], nz = spec.dim == 3 ? n[2] : 0;
  auto node_id = [&](Index i, Index j, Index k) { return i + (nx + 1) * (j + (ny + 1) * k); };

  std::vector<Vec3> nodes;
  nodes.reserve((nx + 1) * (ny + 1) * (nz + 1));
  for (Index k = 0; k <= nz; ++k)
  {
    for (Index j = 0; j <= ny; ++j)
    {
      for (Index i = 0; i <= nx; ++i)
      {
        // Closing nodes are placed exactly on the far walls.
        const double x = i == nx ? len[0] : len[0] * static_cast<double>(i) / nx;
        const double y = j == ny ? len[1] : len[1] * static_cast<double>(j) / ny;
        const double z = spec.dim == 2 ? 0.0 : (k == nz ? len[2] : len[2] * static_cast<double>(k) / nz);
        nodes.push_back({x, y, z});
      }
    }
  }

  const int nv = spec.dim + 1;
  const auto perms = all_permutations(nv);
  std::vector<Index> simplices;
  Index counter = 0;
  auto emit = [&](std::array<Index, 4> s) {
    const auto &p = perms[counter++ % perms.size()];
    for (int i = 0; i < nv; ++i)
    {
      simplices.push_back(s[p[i]]);
    }
  };

  if (spec.dim == 2)
  {
    simplices.reserve(nx * ny * 2 * 3);
    for (Index j = 0; j < ny; ++j)
    {
      for (Index i = 0; i < nx; ++i)
      {
        const Index v00 = node_id(i, j, 0), v10 = node_id(i + 1, j, 0);
        const Index v01 = node_id(i, j + 1, 0), v11 = node_id(i + 1, j + 1, 0);
        emit({v00, v10, v11, 0});
        emit({v00, v11, v01, 0});
      }
    }
  }
  else
  {
    simplices.reserve(nx * ny * nz * 6 * 4);
    static constexpr std::array<std::array<int, 3>, 6> axis_orders = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (Index k = 0; k < nz; ++k)
    {
      for (Index j = 0; j < ny; ++j)
      {
        for (Index i = 0; i < nx; ++i)
        {
          for (const auto &order : axis_orders)
          {
            std::array<Index, 3> g = {i, j, k};
            std::array<Index, 4> s{};
            s[0] = node_id(g[0], g[1], g[2]);
            for (int step = 0; step < 3; ++step)
            {
              ++g[order[step]];
              s[step + 1] = node_id(g[0], g[1], g[2]);
            }
            emit(s);
          }
        }
      }
    }
  }

  auto boundary = detect_boundary(spec.dim, nodes, simplices, len[0]);
  return Mesh(spec.dim, std::move(nodes), std::move(simplices), std::move(boundary));
}

std::vector<FacetIncidence> facet_incidence(const Mesh &mesh)
{
  const int d = mesh.dim();
  std::vector<FacetIncidence> out;
  out.reserve(static_cast<std::size_t>(mesh.n_simplices() * (d + 1)));
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto s = mesh.simplex(t);
    for (int skip = 0; skip <= d; ++skip)
    {
      FacetIncidence f;
      int m = 0;
      for (int i = 0; i <= d; ++i)
      {
        if (i != skip)
        {
          f.nodes[m++] = s[i];
        }
      }
      std::sort(f.nodes.begin(), f.nodes.begin() + d);
      f.simplices[0] = t;
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const FacetIncidence &a, const FacetIncidence &b) {
    return a.nodes != b.nodes ? a.nodes < b.nodes : a.simplices[0] < b.simplices[0];
  });
  std::vector<FacetIncidence> merged;
  merged.reserve(out.size() / 2 + 1);
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    if (!merged.empty() && merged.back().nodes == out[i].nodes)
    {
      if (merged.back().simplices[1] >= 0)
      {
        throw std::logic_error("facet_incidence: facet shared by more than two simplices");
      }
      merged.back().simplices[1] = out[i].simplices[0];
    }
    else
    {
      merged.push_back(out[i]);
    }
  }
  return merged;
}

int edge_orientation_sign(std::span<const Index> simplex_nodes, int local_edge)
{
  const int dim = static_cast<int>(simplex_nodes.size()) - 1;
  const auto edges = local_edges(dim);
  if (local_edge < 0 || local_edge >= static_cast<int>(edges.size()))
  {
    throw std::out_of_range("edge_orientation_sign: local edge index out of range");
  }
  const auto &e = edges[local_edge];
  return simplex_nodes[e[0]] < simplex_nodes[e[1]] ? 1 : -1;
}

Mesh relabel_nodes(const Mesh &mesh, std::span<const Index> new_number)
{
  const Index nn = mesh.n_nodes();
  if (static_cast<Index>(new_number.size()) != nn)
  {
    throw std::invalid_argument("relabel_nodes: relabelling has the wrong length");
  }
  std::vector<Vec3> nodes(nn);
  std::vector<char> seen(nn, 0);
  for (Index i = 0; i < nn; ++i)
  {
    const Index j = new_number[i];
    if (j < 0 || j >= nn || seen[j])
    {
      throw std::invalid_argument("relabel_nodes: relabelling is not a bijection");
    }
    seen[j] = 1;
    nodes[j] = mesh.node(i);
  }
  std::vector<Index> simplices;
  simplices.reserve(mesh.n_simplices() * mesh.nodes_per_simplex());
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    for (Index v : mesh.simplex(t))
    {
      simplices.push_back(new_number[v]);
    }
  }
  std::vector<BoundaryFacet> boundary(mesh.boundary_facets().begin(), mesh.boundary_facets().end());
  for (auto &f : boundary)
  {
    for (int i = 0; i < mesh.dim(); ++i)
    {
      f.nodes[i] = new_number[f.nodes[i]];
    }
  }
  return Mesh(mesh.dim(), std::move(nodes), std::move(simplices), std::move(boundary));
}

Mesh shuffle_local_order(const Mesh &mesh, unsigned seed)
{
  std::mt19937 rng(seed);
  std::vector<Index> simplices;
  simplices.reserve(mesh.n_simplices() * mesh.nodes_per_simplex());
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    std::vector<Index> s(mesh.simplex(t).begin(), mesh.simplex(t).end());
    std::shuffle(s.begin(), s.end(), rng);
    simplices.insert(simplices.end(), s.begin(), s.end());
  }
  return Mesh(mesh.dim(), std::vector<Vec3>(mesh.nodes().begin(), mesh.nodes().end()),
              std::move(simplices),
              std::vector<BoundaryFacet>(mesh.boundary_facets().begin(), mesh.boundary_facets().end()));
}

BarycentricFrame::BarycentricFrame(int dim, std::span<const Vec3> vertices) : dim_(dim)
{
  if (dim != 2 && dim != 3)
  {
    throw std::invalid_argument("BarycentricFrame: dim must be 2 or 3");
  }
  if (static_cast<int>(vertices.size()) != dim + 1)
  {
    throw std::invalid_argument("BarycentricFrame: expected dim+1 vertices");
  }
  std::copy(vertices.begin(), vertices.end(), vertices_.begin());

  double diam = 0.0;
  for (int i = 0; i <= dim; ++i)
  {
    for (int j = i + 1; j <= dim; ++j)
    {
      diam = std::max(diam, norm(vertices_[i] - vertices_[j]));
    }
  }
  const Vec3 e1 = vertices_[1] - vertices_[0];
  const Vec3 e2 = vertices_[2] - vertices_[0];
  double det = 0.0;
  if (dim == 2)
  {
    det = e1[0] * e2[1] - e1[1] * e2[0];
    measure_ = std::abs(det) / 2.0;
    if (measure_ <= 1e-14 * diam * diam)
    {
      throw std::domain_error("BarycentricFrame: degenerate triangle");
    }
    grad_[1] = {e2[1] / det, -e2[0] / det, 0.0};
    grad_[2] = {-e1[1] / det, e1[0] / det, 0.0};
    grad_[0] = -(grad_[1] + grad_[2]);
  }
  else
  {
    const Vec3 e3 = vertices_[3] - vertices_[0];
    det = dot(e1, cross(e2, e3));
    measure_ = std::abs(det) / 6.0;
    if (measure_ <= 1e-14 * diam * diam * diam)
    {
      throw std::domain_error("BarycentricFrame: degenerate tetrahedron");
    }
    grad_[1] = (1.0 / det) * cross(e2, e3);
    grad_[2] = (1.0 / det) * cross(e3, e1);
    grad_[3] = (1.0 / det) * cross(e1, e2);
    grad_[0] = -(grad_[1] + grad_[2] + grad_[3]);
  }
}

BarycentricFrame BarycentricFrame::of(const Mesh &mesh, Index t)
{
  std::array<Vec3, 4> v{};
  const auto s = mesh.simplex(t);
  for (std::size_t i = 0; i < s.size(); ++i)
  {
    v[i] = mesh.node(s[i]);
  }
  return BarycentricFrame(mesh.dim(), std::span<const Vec3>(v.data(), s.size()));
}

std::array<double, 4> BarycentricFrame::lambda(const Vec3 &x) const
{
  std::array<double, 4> l{};
  const Vec3 d = x - vertices_[0];
  double rest = 1.0;
  for (int i = 1; i <= dim_; ++i)
  {
    l[i] = dot(grad_[i], d);
    rest -= l[i];
  }
  l[0] = rest;
  return l;
}

Vec3 BarycentricFrame::point(const std::array<double, 4> &lambda) const
{
  Vec3 x{};
  for (int i = 0; i <= dim_; ++i)
  {
    x = x + lambda[i] * vertices_[i];
  }
  return x;
}

void write_mesh(std::ostream &os, const Mesh &mesh)
{
  const int dim = mesh.dim();
  std::string out;
  out += std::to_string(dim) + ' ' + std::to_string(mesh.n_nodes()) + ' ' +
         std::to_string(mesh.n_simplices()) + ' ' +
         std::to_string(mesh.boundary_facets().size()) + '\n';
  for (const auto &x : mesh.nodes())
  {
    for (int c = 0; c < dim; ++c)
    {
      if (c)
      {
        out += ' ';
      }
      append_double(out, x[c]);
    }
    out += '\n';
  }
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto s = mesh.simplex(t);
    for (std::size_t i = 0; i < s.size(); ++i)
    {
      out += (i ? " " : "") + std::to_string(s[i]);
    }
    out += '\n';
  }
  for (const auto &f : mesh.boundary_facets())
  {
    for (int i = 0; i < dim; ++i)
    {
      out += std::to_string(f.nodes[i]) + ' ';
    }
    out += std::to_string(static_cast<int>(f.label)) + '\n';
  }
  os << out;
}

Mesh read_mesh(std::istream &is)
{
  int dim = 0;
  Index nv = 0, nt = 0, nbf = 0;
  if (!(is >> dim >> nv >> nt >> nbf) || (dim != 2 && dim != 3) || nv < 0 || nt < 0 || nbf < 0)
  {
    throw std::runtime_error("read_mesh: malformed header");
  }
  std::vector<Vec3> nodes(nv, Vec3{});
  std::string tok;
  for (Index i = 0; i < nv; ++i)
  {
    for (int c = 0; c < dim; ++c)
    {
      if (!(is >> tok))
      {
        throw std::runtime_error("read_mesh: truncated node list");
      }
      const char *first = tok.data();
      const char *last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, nodes[i][c]);
      if (ec != std::errc() || ptr != last)
      {
        throw std::runtime_error("read_mesh: bad coordinate '" + tok + "'");
      }
    }
  }
  std::vector<Index> simplices(nt * (dim + 1));
  for (auto &v : simplices)
  {
    if (!(is >> v))
    {
      throw std::runtime_error("read_mesh: truncated simplex list");
    }
  }
  std::vector<BoundaryFacet> boundary(nbf);
  for (auto &f : boundary)
  {
    for (int i = 0; i < dim; ++i)
    {
      if (!(is >> f.nodes[i]))
      {
        throw std::runtime_error("read_mesh: truncated boundary list");
      }
    }
    int label = 0;
    if (!(is >> label) || label < 1 || label > 3)
    {
      throw std::runtime_error("read_mesh: bad boundary label");
    }
    f.label = static_cast<BoundaryLabel>(label);
  }
  return Mesh(dim, std::move(nodes), std::move(simplices), std::move(boundary));
}

}  // namespace hoedge
