// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/edge_elements.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hoedge
{

namespace
{

using boost::multiprecision::cpp_int;

cpp_int factorial(int n)
{
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i)
  {
    f *= i;
  }
  return f;
}

int binomial(int n, int k)
{
  if (k < 0 || k > n)
  {
    return 0;
  }
  long long b = 1;
  for (int i = 1; i <= k; ++i)
  {
    b = b * (n - k + i) / i;
  }
  return static_cast<int>(b);
}

// Mean of lambda^e over the sub-simplex spanned by the given nodes; zero as
// soon as e involves a node outside the sub-simplex.
Rational monomial_mean(const Exponents &e, std::span<const int> support)
{
  std::vector<int> k;
  for (int node = 0; node < 4; ++node)
  {
    const bool inside = std::find(support.begin(), support.end(), node) != support.end();
    if (!inside && e[node] != 0)
    {
      return Rational(0);
    }
    if (inside)
    {
      k.push_back(e[node]);
    }
  }
  return magic_integral(k, static_cast<int>(support.size()) - 1);
}

Exponents lift(const MultiIndex &mi, std::span<const int> nodes)
{
  Exponents e{};
  for (std::size_t i = 0; i < nodes.size(); ++i)
  {
    e[nodes[i]] += mi.k[i];
  }
  return e;
}

EntityKind kind_of(const Exponents &e, int a, int b)
{
  int count = 0;
  for (int node = 0; node < 4; ++node)
  {
    if (e[node] > 0 || node == a || node == b)
    {
      ++count;
    }
  }
  switch (count)
  {
    case 2:
      return EntityKind::Edge;
    case 3:
      return EntityKind::Face;
    default:
      return EntityKind::Volume;
  }
}

// Gauss-Jordan inverse in exact arithmetic; throws on a singular matrix.
std::vector<Rational> invert(std::vector<Rational> a, int n)
{
  std::vector<Rational> inv(n * n, Rational(0));
  for (int i = 0; i < n; ++i)
  {
    inv[i * n + i] = 1;
  }
  for (int col = 0; col < n; ++col)
  {
    int pivot = -1;
    for (int row = col; row < n; ++row)
    {
      if (a[row * n + col] != 0)
      {
        pivot = row;
        break;
      }
    }
    if (pivot < 0)
    {
      throw std::logic_error("assemble_vandermonde: singular generalized Vandermonde matrix");
    }
    if (pivot != col)
    {
      for (int j = 0; j < n; ++j)
      {
        std::swap(a[pivot * n + j], a[col * n + j]);
        std::swap(inv[pivot * n + j], inv[col * n + j]);
      }
    }
    const Rational p = a[col * n + col];
    for (int j = 0; j < n; ++j)
    {
      a[col * n + j] /= p;
      inv[col * n + j] /= p;
    }
    for (int row = 0; row < n; ++row)
    {
      if (row == col || a[row * n + col] == 0)
      {
        continue;
      }
      const Rational f = a[row * n + col];
      for (int j = 0; j < n; ++j)
      {
        a[row * n + j] -= f * a[col * n + j];
        inv[row * n + j] -= f * inv[col * n + j];
      }
    }
  }
  return inv;
}

}  // namespace

const char *to_string(EntityKind kind)
{
  switch (kind)
  {
    case EntityKind::Edge:
      return "edge";
    case EntityKind::Face:
      return "face";
    case EntityKind::Volume:
      return "volume";
  }
  return "?";
}

int max_degree(int dim)
{
  return dim == 2 ? 5 : 3;
}

void check_supported(int dim, int degree)
{
  if (dim != 2 && dim != 3)
  {
    throw std::invalid_argument("edge elements: dim must be 2 or 3");
  }
  if (degree < 1 || degree > max_degree(dim))
  {
    throw std::invalid_argument("edge elements: degree " + std::to_string(degree) +
                                " is not supported in " + std::to_string(dim) + "d");
  }
}

int element_dimension(int dim, int degree)
{
  // (r+d)(r+d-1)...(r+2) r / (d-1)!
  long long num = degree;
  for (int f = degree + 2; f <= degree + dim; ++f)
  {
    num *= f;
  }
  long long den = 1;
  for (int f = 2; f <= dim - 1; ++f)
  {
    den *= f;
  }
  return static_cast<int>(num / den);
}

int dofs_per_edge(int degree)
{
  return degree;
}

int dofs_per_face(int degree)
{
  return 2 * binomial(degree, 2);  // 2 dim P_{r-2}(triangle)
}

int dofs_per_volume(int degree)
{
  return 3 * binomial(degree, 3);  // 3 dim P_{r-3}(tetrahedron)
}

int MultiIndex::weight() const
{
  return std::accumulate(k.begin(), k.end(), 0);
}

std::vector<MultiIndex> multi_indices(int nu, int weight)
{
  std::vector<MultiIndex> out;
  if (nu <= 0 || weight < 0)
  {
    return out;
  }
  if (nu == 1)
  {
    out.push_back({{weight}});
    return out;
  }
  for (int first = weight; first >= 0; --first)
  {
    for (auto &rest : multi_indices(nu - 1, weight - first))
    {
      MultiIndex m;
      m.k.push_back(first);
      m.k.insert(m.k.end(), rest.k.begin(), rest.k.end());
      out.push_back(std::move(m));
    }
  }
  return out;
}

Rational magic_integral(std::span<const int> k, int p)
{
  if (p < 1 || static_cast<int>(k.size()) != p + 1)
  {
    throw std::invalid_argument("magic_integral: need p >= 1 and p+1 exponents");
  }
  cpp_int num = factorial(p);
  int total = p;
  for (int ki : k)
  {
    if (ki < 0)
    {
      throw std::invalid_argument("magic_integral: negative exponent");
    }
    num *= factorial(ki);
    total += ki;
  }
  return Rational(num, factorial(total));
}

std::vector<std::vector<int>> reference_faces(int dim)
{
  if (dim == 2)
  {
    return {{0, 1, 2}};
  }
  std::vector<std::vector<int>> out;
  for (const auto &f : kTetrahedronFaces)
  {
    out.push_back({f[0], f[1], f[2]});
  }
  return out;
}

std::vector<Generator> build_generators(int degree, int dim)
{
  check_supported(dim, degree);
  std::vector<Generator> out;
  const auto edges = local_edges(dim);
  for (std::size_t e = 0; e < edges.size(); ++e)
  {
    const int nodes[2] = {edges[e][0], edges[e][1]};
    for (const auto &mi : multi_indices(2, degree - 1))
    {
      out.push_back({lift(mi, nodes), static_cast<int>(e), EntityKind::Edge, static_cast<int>(e)});
    }
  }
  if (degree >= 2)
  {
    const auto faces = reference_faces(dim);
    for (std::size_t f = 0; f < faces.size(); ++f)
    {
      const auto &fn = faces[f];
      // The two sides leaving the smallest node, each paired with the
      // remaining node of the face.
      const std::array<std::array<int, 3>, 2> sides = {{{fn[0], fn[1], fn[2]}, {fn[0], fn[2], fn[1]}}};
      for (const auto &side : sides)
      {
        const int e = local_edge_index(dim, side[0], side[1]);
        for (const auto &mi : multi_indices(3, degree - 2))
        {
          Exponents ex = lift(mi, fn);
          ex[side[2]] += 1;
          out.push_back({ex, e, EntityKind::Face, static_cast<int>(f)});
        }
      }
    }
  }
  if (dim == 3 && degree >= 3)
  {
    const std::array<std::array<int, 4>, 3> sides = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    const int all[4] = {0, 1, 2, 3};
    for (const auto &side : sides)
    {
      const int e = local_edge_index(dim, side[0], side[1]);
      for (const auto &mi : multi_indices(4, degree - 3))
      {
        Exponents ex = lift(mi, all);
        ex[side[2]] += 1;
        ex[side[3]] += 1;
        out.push_back({ex, e, EntityKind::Volume, 0});
      }
    }
  }
  for (auto &g : out)
  {
    const auto &en = edges[g.edge];
    if (kind_of(g.exponents, en[0], en[1]) != g.kind)
    {
      throw std::logic_error("build_generators: generator kind mismatch");
    }
  }
  return out;
}

std::vector<DofDescriptor> build_dofs(int degree, int dim)
{
  check_supported(dim, degree);
  std::vector<DofDescriptor> out;
  const auto edges = local_edges(dim);
  for (std::size_t e = 0; e < edges.size(); ++e)
  {
    const std::vector<int> nodes = {edges[e][0], edges[e][1]};
    for (const auto &mi : multi_indices(2, degree - 1))
    {
      out.push_back({EntityKind::Edge, static_cast<int>(e), {nodes[0], nodes[1]},
                     static_cast<int>(e), lift(mi, nodes), nodes});
    }
  }
  if (degree >= 2)
  {
    const auto faces = reference_faces(dim);
    for (std::size_t f = 0; f < faces.size(); ++f)
    {
      const auto &fn = faces[f];
      for (int to : {fn[1], fn[2]})
      {
        const int e = local_edge_index(dim, fn[0], to);
        for (const auto &mi : multi_indices(3, degree - 2))
        {
          out.push_back({EntityKind::Face, static_cast<int>(f), {fn[0], to}, e, lift(mi, fn), fn});
        }
      }
    }
  }
  if (dim == 3 && degree >= 3)
  {
    const std::vector<int> all = {0, 1, 2, 3};
    for (int to : {1, 2, 3})
    {
      const int e = local_edge_index(dim, 0, to);
      for (const auto &mi : multi_indices(4, degree - 3))
      {
        out.push_back({EntityKind::Volume, 0, {0, to}, e, lift(mi, all), all});
      }
    }
  }
  return out;
}

DualizingMatrix assemble_vandermonde(int degree, int dim)
{
  const auto gens = build_generators(degree, dim);
  const auto dofs = build_dofs(degree, dim);
  const int n = static_cast<int>(dofs.size());
  if (static_cast<int>(gens.size()) != n || n != element_dimension(dim, degree))
  {
    throw std::logic_error("assemble_vandermonde: generator and dof counts disagree");
  }
  const auto edges = local_edges(dim);

  DualizingMatrix out;
  out.degree = degree;
  out.dim = dim;
  out.n = n;
  out.V.assign(n * n, Rational(0));
  for (int i = 0; i < n; ++i)
  {
    const auto &dof = dofs[i];
    // grad lambda_node . t = -1 at the tail, +1 at the head, 0 elsewhere.
    auto dlambda = [&](int node) {
      return (node == dof.tangent[1] ? 1 : 0) - (node == dof.tangent[0] ? 1 : 0);
    };
    for (int j = 0; j < n; ++j)
    {
      const auto &g = gens[j];
      const int a = edges[g.edge][0], b = edges[g.edge][1];
      Exponents base{};
      for (int node = 0; node < 4; ++node)
      {
        base[node] = g.exponents[node] + dof.weight[node];
      }
      Rational value = 0;
      if (const int db = dlambda(b); db != 0)
      {
        Exponents e = base;
        ++e[a];
        value += db * monomial_mean(e, dof.support);
      }
      if (const int da = dlambda(a); da != 0)
      {
        Exponents e = base;
        ++e[b];
        value -= da * monomial_mean(e, dof.support);
      }
      out.V[i * n + j] = value;
    }
  }
  out.Vinv = invert(out.V, n);
  out.integral = std::all_of(out.Vinv.begin(), out.Vinv.end(), [](const Rational &q) {
    return boost::multiprecision::denominator(q) == 1;
  });
  return out;
}

void write_rational_csv(std::ostream &os, std::span<const Rational> m, int n)
{
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      os << (j ? "," : "") << m[i * n + j].str();
    }
    os << '\n';
  }
}

std::vector<int> node_permutation(std::span<const Index> global_nodes)
{
  std::vector<int> p(global_nodes.size());
  std::iota(p.begin(), p.end(), 0);
  std::sort(p.begin(), p.end(), [&](int a, int b) { return global_nodes[a] < global_nodes[b]; });
  for (std::size_t i = 1; i < p.size(); ++i)
  {
    if (global_nodes[p[i]] == global_nodes[p[i - 1]])
    {
      throw std::invalid_argument("node_permutation: repeated global node");
    }
  }
  return p;
}

std::vector<int> dof_permutation(int degree, int dim, std::span<const Index> global_nodes)
{
  check_supported(dim, degree);
  if (static_cast<int>(global_nodes.size()) != dim + 1)
  {
    throw std::invalid_argument("dof_permutation: expected dim+1 nodes");
  }
  const auto perm = node_permutation(global_nodes);
  const auto edges = local_edges(dim);
  const int ne = static_cast<int>(edges.size());
  const int per_edge = dofs_per_edge(degree);
  const int per_face = dofs_per_face(degree);
  std::vector<int> P(element_dimension(dim, degree));
  std::iota(P.begin(), P.end(), 0);
  for (int i = 0; i < ne; ++i)
  {
    const int local = local_edge_index(dim, perm[edges[i][0]], perm[edges[i][1]]);
    for (int m = 0; m < per_edge; ++m)
    {
      P[i * per_edge + m] = local * per_edge + m;
    }
  }
  if (dim == 3)
  {
    // Reference face j is opposite the node with the j-th smallest number.
    for (int j = 0; j < 4; ++j)
    {
      for (int m = 0; m < per_face; ++m)
      {
        P[ne * per_edge + j * per_face + m] = ne * per_edge + perm[j] * per_face + m;
      }
    }
  }
  return P;
}

LocalElement::LocalElement(int dim, int degree)
  : dim_(dim), degree_(degree), generators_(build_generators(degree, dim)),
    dofs_(build_dofs(degree, dim)), dual_(assemble_vandermonde(degree, dim))
{
  for (const auto &d : dofs_)
  {
    (d.kind == EntityKind::Edge ? n_edge_ : d.kind == EntityKind::Face ? n_face_ : n_volume_)++;
  }
  const auto edges = local_edges(dim);
  const int n = size();
  term_offsets_.push_back(0);
  for (int j = 0; j < n; ++j)
  {
    std::map<std::pair<Exponents, int>, Rational> acc;
    for (int l = 0; l < n; ++l)
    {
      const Rational &c = dual_.vinv(l, j);
      if (c == 0)
      {
        continue;
      }
      const auto &g = generators_[l];
      const int a = edges[g.edge][0], b = edges[g.edge][1];
      Exponents ea = g.exponents, eb = g.exponents;
      ++ea[a];
      ++eb[b];
      acc[{ea, b}] += c;
      acc[{eb, a}] -= c;
    }
    for (const auto &[key, c] : acc)
    {
      if (c != 0)
      {
        terms_.push_back({key.first, key.second, static_cast<double>(c)});
      }
    }
    term_offsets_.push_back(static_cast<int>(terms_.size()));
  }
}

std::span<const LocalElement::Term> LocalElement::dual_terms(int j) const
{
  return {terms_.data() + term_offsets_[j],
          static_cast<std::size_t>(term_offsets_[j + 1] - term_offsets_[j])};
}

const LocalElement &local_element(int dim, int degree)
{
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<LocalElement>> cache;
  check_supported(dim, degree);
  std::lock_guard lock(mutex);
  auto &slot = cache[{dim, degree}];
  if (!slot)
  {
    slot = std::make_unique<LocalElement>(dim, degree);
  }
  return *slot;
}

ElementBasis::ElementBasis(const LocalElement &element, const BarycentricFrame &frame,
                           std::span<const Index> global_nodes)
  : element_(&element), frame_(frame), perm_(node_permutation(global_nodes)),
    dof_perm_(dof_permutation(element.degree(), element.dim(), global_nodes))
{
  for (std::size_t i = 0; i < perm_.size(); ++i)
  {
    ref_grad_[i] = frame_.gradient(perm_[i]);
  }
}

void ElementBasis::evaluate(const std::array<double, 4> &lambda, std::span<Vec3> values,
                            std::span<Vec3> curls) const
{
  const int nv = element_->dim() + 1;
  const int r = element_->degree();
  // pw[i][k] = lambda_ref_i^k
  std::array<std::array<double, 8>, 4> pw{};
  for (int i = 0; i < 4; ++i)
  {
    const double l = i < nv ? lambda[perm_[i]] : 0.0;
    pw[i][0] = 1.0;
    for (int k = 1; k <= r + 1; ++k)
    {
      pw[i][k] = pw[i][k - 1] * l;
    }
  }
  const int n = size();
  for (int j = 0; j < n; ++j)
  {
    Vec3 value{}, curl{};
    for (const auto &term : element_->dual_terms(j))
    {
      const auto &e = term.exponents;
      const double mono = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][e[3]];
      const Vec3 &g = ref_grad_[term.gradient];
      value = value + (term.coefficient * mono) * g;
      Vec3 grad_mono{};
      for (int i = 0; i < nv; ++i)
      {
        if (e[i] == 0)
        {
          continue;
        }
        double partial = e[i] * pw[i][e[i] - 1];
        for (int l = 0; l < nv; ++l)
        {
          if (l != i)
          {
            partial *= pw[l][e[l]];
          }
        }
        grad_mono = grad_mono + partial * ref_grad_[i];
      }
      curl = curl + term.coefficient * cross(grad_mono, g);
    }
    values[dof_perm_[j]] = value;
    curls[dof_perm_[j]] = curl;
  }
}

void evaluate_dual_basis(const Mesh &mesh, Index t, int degree, const Vec3 &x,
                         std::vector<Vec3> &values, std::vector<Vec3> &curls)
{
  const auto frame = BarycentricFrame::of(mesh, t);
  const auto lambda = frame.lambda(x);
  for (int i = 0; i <= mesh.dim(); ++i)
  {
    if (lambda[i] < -1e-12)
    {
      throw std::domain_error("evaluate_dual_basis: point outside the simplex");
    }
  }
  const ElementBasis basis(local_element(mesh.dim(), degree), frame, mesh.simplex(t));
  values.resize(basis.size());
  curls.resize(basis.size());
  basis.evaluate(lambda, values, curls);
}

}  // namespace hoedge
