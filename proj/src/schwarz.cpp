// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/schwarz.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/UmfPackSupport>

namespace hoedge
{

namespace
{

// Fraction of the right-hand subdomain across interface i, as a function
// of the column coordinate xi: 0 left of p, 1 right of q, linear between,
// 1/2 at a step (p == q).
struct Transition
{
  Rational p, q;

  Rational operator()(const Rational &xi) const
  {
    if (xi < p)
    {
      return 0;
    }
    if (xi > q)
    {
      return 1;
    }
    if (p == q)
    {
      return Rational(1, 2);
    }
    return (xi - p) / (q - p);
  }
};

// Extensions of the left and right subdomains across an interface.
std::pair<Index, Index> extensions(int overlap)
{
  if (overlap == 1)
  {
    return {1, 0};
  }
  return {(overlap + 1) / 2, overlap / 2};
}

}  // namespace

std::vector<Index> node_columns(const Mesh &mesh, Index *n_columns)
{
  std::vector<double> xs;
  xs.reserve(mesh.n_nodes());
  for (const auto &p : mesh.nodes())
  {
    xs.push_back(p[0]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Index> col(mesh.n_nodes());
  for (Index i = 0; i < mesh.n_nodes(); ++i)
  {
    col[i] = std::lower_bound(xs.begin(), xs.end(), mesh.node(i)[0]) - xs.begin();
  }
  if (n_columns)
  {
    *n_columns = static_cast<Index>(xs.size()) - 1;
  }
  return col;
}

namespace
{

Decomposition build_strips(const DofMap &dofs, std::vector<Index> bounds, int overlap)
{
  const Mesh &mesh = dofs.mesh();
  Decomposition dec;
  dec.overlap = overlap;
  const auto col = node_columns(mesh, &dec.n_columns);
  const int n_sub = static_cast<int>(bounds.size()) - 1;
  dec.interfaces.assign(bounds.begin() + 1, bounds.end() - 1);
  const auto [ext_left, ext_right] = extensions(overlap);

  dec.subdomains.resize(n_sub);
  for (int s = 0; s < n_sub; ++s)
  {
    auto &sub = dec.subdomains[s];
    sub.first_column = s > 0 ? bounds[s] - ext_right : 0;
    sub.last_column = s + 1 < n_sub ? bounds[s + 1] + ext_left : dec.n_columns;
  }

  const int d = mesh.dim();
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const auto nodes = mesh.simplex(t);
    Index c = col[nodes[0]];
    for (int i = 1; i <= d; ++i)
    {
      c = std::min(c, col[nodes[i]]);
    }
    for (auto &sub : dec.subdomains)
    {
      if (c >= sub.first_column && c < sub.last_column)
      {
        sub.simplices.push_back(t);
      }
    }
  }

  for (Index f = 0; f < dofs.n_free(); ++f)
  {
    const auto nodes = dofs.support_nodes(dofs.full_index(f));
    Index lo = col[nodes[0]], hi = lo;
    for (Index n : nodes)
    {
      lo = std::min(lo, col[n]);
      hi = std::max(hi, col[n]);
    }
    for (auto &sub : dec.subdomains)
    {
      if (lo >= sub.first_column && hi <= sub.last_column)
      {
        sub.dofs.push_back(f);
      }
    }
  }
  return dec;
}

}  // namespace

Decomposition decompose(const DofMap &dofs, int n_sub, int overlap)
{
  if (n_sub < 2)
  {
    throw std::invalid_argument("decompose: need at least two subdomains");
  }
  if (overlap < 1)
  {
    throw std::invalid_argument("decompose: overlap must be at least one layer");
  }
  Index nx = 0;
  node_columns(dofs.mesh(), &nx);
  std::vector<Index> bounds(n_sub + 1);
  for (int s = 0; s <= n_sub; ++s)
  {
    bounds[s] = (s * nx + n_sub / 2) / n_sub;
  }
  const auto [ext_left, ext_right] = extensions(overlap);
  for (int s = 0; s < n_sub; ++s)
  {
    const Index width = bounds[s + 1] - bounds[s];
    if (width < 2)
    {
      throw std::invalid_argument("decompose: " + std::to_string(n_sub) +
                                  " subdomains leave fewer than 2 element layers each (" +
                                  std::to_string(nx) + " columns)");
    }
    if ((s > 0 && width < ext_left) || (s + 1 < n_sub && width < ext_right))
    {
      throw std::invalid_argument("decompose: overlap wider than a subdomain");
    }
  }
  Decomposition dec = build_strips(dofs, bounds, overlap);
  if (overlap == 1)
  {
    dec.warnings.push_back(
        "overlap of one layer: the partition of unity cannot vanish with zero slope on the "
        "subdomain border; using the plain cut-off, which is not zero on every interface");
  }
  return dec;
}

Decomposition whole_domain(const DofMap &dofs)
{
  Index nx = 0;
  node_columns(dofs.mesh(), &nx);
  return build_strips(dofs, {0, nx}, 0);
}

void write_decomposition(std::ostream &os, const Decomposition &dec, Index n_simplices)
{
  std::vector<std::vector<int>> owners(n_simplices);
  for (int s = 0; s < dec.size(); ++s)
  {
    for (Index t : dec.subdomains[s].simplices)
    {
      owners[t].push_back(s);
    }
  }
  for (Index t = 0; t < n_simplices; ++t)
  {
    os << t;
    for (int s : owners[t])
    {
      os << ' ' << s;
    }
    os << '\n';
  }
}

PartitionOfUnity build_partition_of_unity(const Decomposition &dec, const DofMap &dofs)
{
  const auto col = node_columns(dofs.mesh());
  const auto [ext_left, ext_right] = extensions(dec.overlap);
  std::vector<Transition> tr;
  for (Index b : dec.interfaces)
  {
    tr.push_back({Rational(b - ext_right + 1), Rational(b + ext_left - 1)});
  }
  const int n_sub = dec.size();
  auto chi = [&](int s, const Rational &xi) {
    Rational v = 1;
    if (dec.overlap == 1)
    {
      // plain chi: 1 on the core, linear down to 0 across the single extra
      // layer; the unextended neighbour stays 1 up to its own border
      if (s + 1 < n_sub)
      {
        const Rational end = dec.interfaces[s] + 1;
        v = std::clamp(Rational(end - xi), Rational(0), Rational(1));
      }
      return v;
    }
    if (s > 0)
    {
      v *= tr[s - 1](xi);
    }
    if (s + 1 < n_sub)
    {
      v *= 1 - tr[s](xi);
    }
    return v;
  };

  auto barycenter = [&](Index f) {
    const auto nodes = dofs.support_nodes(dofs.full_index(f));
    Index sum = 0;
    for (Index n : nodes)
    {
      sum += col[n];
    }
    return Rational(sum, static_cast<Index>(nodes.size()));
  };

  PartitionOfUnity pou;
  pou.exact.resize(n_sub);
  std::map<Index, Rational> total;
  for (int s = 0; s < n_sub; ++s)
  {
    const auto &sub = dec.subdomains[s];
    pou.exact[s].resize(sub.dofs.size());
    for (std::size_t k = 0; k < sub.dofs.size(); ++k)
    {
      pou.exact[s][k] = chi(s, barycenter(sub.dofs[k]));
      if (pou.exact[s][k] != 0)
      {
        total[sub.dofs[k]] += pou.exact[s][k];
      }
    }
  }
  pou.weights.resize(n_sub);
  for (int s = 0; s < n_sub; ++s)
  {
    const auto &sub = dec.subdomains[s];
    pou.weights[s].resize(sub.dofs.size());
    for (std::size_t k = 0; k < sub.dofs.size(); ++k)
    {
      auto &w = pou.exact[s][k];
      if (w != 0)
      {
        w /= total.at(sub.dofs[k]);
      }
      pou.weights[s][k] = w.convert_to<double>();
    }
  }
  return pou;
}

Index partition_of_unity_defect(const PartitionOfUnity &pou, const Decomposition &dec,
                                Index n_free)
{
  std::vector<Rational> sum(n_free);
  for (int s = 0; s < dec.size(); ++s)
  {
    const auto &sub = dec.subdomains[s];
    for (std::size_t k = 0; k < sub.dofs.size(); ++k)
    {
      sum[sub.dofs[k]] += pou.exact[s][k];
    }
  }
  return std::count_if(sum.begin(), sum.end(), [](const Rational &v) { return v != 1; });
}

struct SchwarzPreconditioner::Local
{
  std::vector<Index> dofs;
  std::vector<double> weights;
  std::vector<ImpedanceFacet> interface_facets;
  SparseMatrix A;
  Eigen::UmfPackLU<SparseMatrix> lu;
};

SchwarzPreconditioner::SchwarzPreconditioner(const DofMap &dofs, const Decomposition &dec,
                                             const PhysicalParams &params, double eta_physical)
  : n_(dofs.n_free()), pou_(build_partition_of_unity(dec, dofs))
{
  params.validate();
  const Mesh &mesh = dofs.mesh();
  const Complex gamma = params.gamma();
  const double eta_interface = params.omega_tilde();
  const auto incidence = facet_incidence(mesh);
  const auto physical = physical_impedance_facets(mesh, eta_physical);
  std::vector<char> inside(mesh.n_simplices());
  std::vector<Index> numbering(dofs.n_dofs());

  for (int s = 0; s < dec.size(); ++s)
  {
    const auto &sub = dec.subdomains[s];
    auto local = std::make_unique<Local>();
    local->dofs = sub.dofs;
    local->weights = pou_.weights[s];

    std::fill(inside.begin(), inside.end(), 0);
    for (Index t : sub.simplices)
    {
      inside[t] = 1;
    }
    std::vector<ImpedanceFacet> facets;
    for (const auto &f : physical)
    {
      if (inside[f.simplex])
      {
        facets.push_back(f);
      }
    }
    for (const auto &f : incidence)
    {
      if (f.simplices[1] < 0 || inside[f.simplices[0]] == inside[f.simplices[1]])
      {
        continue;
      }
      ImpedanceFacet g;
      g.nodes = f.nodes;
      g.simplex = inside[f.simplices[0]] ? f.simplices[0] : f.simplices[1];
      g.eta = eta_interface;
      local->interface_facets.push_back(g);
      facets.push_back(g);
    }

    std::fill(numbering.begin(), numbering.end(), Index{-1});
    for (std::size_t k = 0; k < sub.dofs.size(); ++k)
    {
      numbering[dofs.full_index(sub.dofs[k])] = static_cast<Index>(k);
    }
    local->A = assemble_matrix(dofs, gamma * gamma, sub.simplices, facets, numbering,
                               static_cast<Index>(sub.dofs.size()));
    local->lu.compute(local->A);
    if (local->lu.info() != Eigen::Success)
    {
      throw std::runtime_error("SchwarzPreconditioner: factorization of subdomain " +
                               std::to_string(s) + " failed");
    }
    locals_.push_back(std::move(local));
  }
}

SchwarzPreconditioner::~SchwarzPreconditioner() = default;
SchwarzPreconditioner::SchwarzPreconditioner(SchwarzPreconditioner &&) noexcept = default;
SchwarzPreconditioner &SchwarzPreconditioner::operator=(SchwarzPreconditioner &&) noexcept = default;

int SchwarzPreconditioner::n_subdomains() const
{
  return static_cast<int>(locals_.size());
}

const SparseMatrix &SchwarzPreconditioner::local_matrix(int s) const
{
  return locals_.at(s)->A;
}

const std::vector<ImpedanceFacet> &SchwarzPreconditioner::interface_facets(int s) const
{
  return locals_.at(s)->interface_facets;
}

Eigen::VectorXcd SchwarzPreconditioner::apply(SchwarzVariant variant,
                                              const Eigen::VectorXcd &x) const
{
  if (x.size() != n_)
  {
    throw std::invalid_argument("SchwarzPreconditioner::apply: dimension mismatch");
  }
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n_);
  Eigen::VectorXcd rs, zs;
  for (const auto &local : locals_)
  {
    const auto m = static_cast<Index>(local->dofs.size());
    rs.resize(m);
    for (Index k = 0; k < m; ++k)
    {
      rs[k] = x[local->dofs[k]];
    }
    zs = local->lu.solve(rs);
    if (variant == SchwarzVariant::Oras)
    {
      for (Index k = 0; k < m; ++k)
      {
        y[local->dofs[k]] += local->weights[k] * zs[k];
      }
    }
    else
    {
      for (Index k = 0; k < m; ++k)
      {
        y[local->dofs[k]] += zs[k];
      }
    }
  }
  return y;
}

const char *to_string(SchwarzVariant v)
{
  return v == SchwarzVariant::Oras ? "oras" : "oas";
}

}  // namespace hoedge
