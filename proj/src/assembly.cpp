// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/assembly.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "hoedge/quadrature.hpp"

namespace hoedge
{

namespace
{

constexpr Complex kI{0.0, 1.0};

Complex cdot(const CVec3 &a, const Vec3 &b)
{
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

struct FacetGeometry
{
  double measure = 0.0;
  Vec3 normal{};  // unit, pointing out of the inner simplex
};

FacetGeometry facet_geometry(const Mesh &mesh, const ImpedanceFacet &f)
{
  const int d = mesh.dim();
  FacetGeometry g;
  const Vec3 &p0 = mesh.node(f.nodes[0]);
  const Vec3 &p1 = mesh.node(f.nodes[1]);
  if (d == 2)
  {
    const Vec3 t = p1 - p0;
    g.measure = norm(t);
    g.normal = {t[1], -t[0], 0.0};
  }
  else
  {
    const Vec3 n = cross(p1 - p0, mesh.node(f.nodes[2]) - p0);
    g.measure = 0.5 * norm(n);
    g.normal = n;
  }
  g.normal = (1.0 / norm(g.normal)) * g.normal;
  // orient away from the centroid of the inner simplex
  if (dot(g.normal, p0 - mesh.centroid(f.simplex)) < 0.0)
  {
    g.normal = -g.normal;
  }
  return g;
}

Vec3 tangential(const Vec3 &v, const Vec3 &n)
{
  return v - dot(v, n) * n;
}

}  // namespace

void PhysicalParams::validate() const
{
  if (!(epsilon > 0.0) || !(mu > 0.0))
  {
    throw std::invalid_argument("PhysicalParams: epsilon and mu must be positive");
  }
  if (!(sigma >= 0.0))
  {
    throw std::invalid_argument("PhysicalParams: sigma must be non-negative");
  }
  if (omega == 0.0 || !std::isfinite(omega))
  {
    throw std::invalid_argument("PhysicalParams: omega must be non-zero");
  }
}

Complex PhysicalParams::epsilon_sigma() const
{
  return Complex(epsilon, -sigma / omega);
}

Complex PhysicalParams::gamma() const
{
  return omega * std::sqrt(mu * epsilon_sigma());
}

double PhysicalParams::omega_tilde() const
{
  return omega * std::sqrt(mu * epsilon);
}

ReferenceSolution ReferenceSolution::plane_wave(const PhysicalParams &params)
{
  params.validate();
  ReferenceSolution s;
  s.kind_ = Kind::PlaneWave2d;
  s.params_ = params;
  return s;
}

ReferenceSolution ReferenceSolution::te_mode(const PhysicalParams &params, double a, int m)
{
  params.validate();
  if (!(a > 0.0) || m < 1)
  {
    throw std::invalid_argument("te_mode: need a > 0 and m >= 1");
  }
  const double wt = params.omega_tilde();
  const double cut = m * std::numbers::pi / a;
  if (wt <= cut)
  {
    throw std::invalid_argument("te_mode: frequency below the cutoff of the mode");
  }
  ReferenceSolution s;
  s.kind_ = Kind::TransverseElectric3d;
  s.params_ = params;
  s.a_ = a;
  s.m_ = m;
  s.beta_ = std::sqrt(wt * wt - cut * cut);
  s.amplitude_ = kI * params.omega * params.mu / (wt * wt - s.beta_ * s.beta_);
  return s;
}

CVec3 ReferenceSolution::field(const Vec3 &x) const
{
  if (kind_ == Kind::PlaneWave2d)
  {
    return {0.0, std::exp(-kI * params_.gamma() * x[0]), 0.0};
  }
  const double k = m_ * std::numbers::pi / a_;
  return {0.0, -amplitude_ * k * std::sin(k * x[2]) * std::exp(-kI * beta_ * x[0]), 0.0};
}

VectorField ReferenceSolution::as_field() const
{
  return [self = *this](const Vec3 &x) { return self.field(x); };
}

BoundaryData ReferenceSolution::boundary_data() const
{
  BoundaryData data;
  const auto self = *this;
  if (kind_ == Kind::PlaneWave2d)
  {
    const Complex g = params_.gamma();
    const double wt = params_.omega_tilde();
    data.eta = wt;
    data.g_in = [self, g, wt](const Vec3 &x) { return (kI * g + kI * wt) * self.field(x); };
    data.g_out = [self, g, wt](const Vec3 &x) { return (-kI * g + kI * wt) * self.field(x); };
  }
  else
  {
    const double beta = beta_;
    data.eta = beta;
    data.g_in = [self, beta](const Vec3 &x) { return (2.0 * kI * beta) * self.field(x); };
    data.g_out = [](const Vec3 &) { return CVec3{}; };
  }
  return data;
}

double mesh_size_rule(int dim, const PhysicalParams &params)
{
  params.validate();
  if (dim == 2)
  {
    const double wt = params.omega_tilde();
    return std::sqrt(2.0 / (wt * wt * wt));
  }
  if (dim == 3)
  {
    const double beta = params.omega_tilde();
    return std::sqrt(1.0 / (beta * beta * beta));
  }
  throw std::invalid_argument("mesh_size_rule: dim must be 2 or 3");
}

TeSetup te10_setup(double omega_beta, double a, const PhysicalParams &material)
{
  PhysicalParams p = material;
  p.omega = omega_beta;
  TeSetup s;
  s.beta = p.omega_tilde();
  s.h = mesh_size_rule(3, p);
  const double cut = std::numbers::pi / a;
  s.omega_tilde = std::sqrt(s.beta * s.beta + cut * cut);
  s.omega = s.omega_tilde / std::sqrt(material.mu * material.epsilon);
  return s;
}

std::vector<ImpedanceFacet> physical_impedance_facets(const Mesh &mesh, double eta)
{
  std::vector<ImpedanceFacet> out;
  const auto incidence = facet_incidence(mesh);
  for (const auto &bf : mesh.boundary_facets())
  {
    if (bf.label == BoundaryLabel::Wall)
    {
      continue;
    }
    ImpedanceFacet f;
    f.nodes = bf.nodes;
    std::sort(f.nodes.begin(), f.nodes.begin() + mesh.dim());
    const auto it = std::lower_bound(
        incidence.begin(), incidence.end(), f.nodes,
        [](const FacetIncidence &a, const std::array<Index, 3> &k) { return a.nodes < k; });
    if (it == incidence.end() || it->nodes != f.nodes || it->simplices[1] >= 0)
    {
      throw std::invalid_argument("physical_impedance_facets: labelled facet is not on the boundary");
    }
    f.simplex = it->simplices[0];
    f.eta = eta;
    out.push_back(f);
  }
  return out;
}

SparseMatrix assemble_matrix(const DofMap &dofs, Complex gamma2, std::span<const Index> simplices,
                             std::span<const ImpedanceFacet> facets,
                             std::span<const Index> numbering, Index n)
{
  const Mesh &mesh = dofs.mesh();
  const int d = mesh.dim();
  const int r = dofs.degree();
  const int nloc = dofs.element().size();
  const auto q = simplex_quadrature(d, 2 * r);
  std::vector<Vec3> v(nloc), c(nloc);
  std::vector<double> K(nloc * nloc), M(nloc * nloc);
  std::vector<Eigen::Triplet<Complex, int>> triplets;
  triplets.reserve(simplices.size() * nloc * nloc);

  for (Index t : simplices)
  {
    const ElementBasis basis = dofs.basis(t);
    const double vol = basis.frame().measure();
    std::fill(K.begin(), K.end(), 0.0);
    std::fill(M.begin(), M.end(), 0.0);
    for (int p = 0; p < q.size(); ++p)
    {
      basis.evaluate(q.points[p], v, c);
      const double w = vol * q.weights[p];
      for (int i = 0; i < nloc; ++i)
      {
        for (int j = 0; j <= i; ++j)
        {
          K[i * nloc + j] += w * dot(c[i], c[j]);
          M[i * nloc + j] += w * dot(v[i], v[j]);
        }
      }
    }
    const auto global = dofs.simplex_dofs(t);
    for (int i = 0; i < nloc; ++i)
    {
      const Index gi = numbering[global[i]];
      if (gi < 0)
      {
        continue;
      }
      for (int j = 0; j < nloc; ++j)
      {
        const Index gj = numbering[global[j]];
        if (gj < 0)
        {
          continue;
        }
        const int k = i >= j ? i * nloc + j : j * nloc + i;
        triplets.emplace_back(static_cast<int>(gi), static_cast<int>(gj),
                              Complex(K[k]) - gamma2 * M[k]);
      }
    }
  }

  if (!facets.empty())
  {
    const auto qf = simplex_quadrature(d - 1, 2 * r);
    std::vector<Vec3> vt(nloc);
    for (const auto &f : facets)
    {
      const ElementBasis basis = dofs.basis(f.simplex);
      const FacetGeometry geo = facet_geometry(mesh, f);
      std::fill(M.begin(), M.end(), 0.0);
      for (int p = 0; p < qf.size(); ++p)
      {
        Vec3 x{};
        for (int m = 0; m < d; ++m)
        {
          x = x + qf.points[p][m] * mesh.node(f.nodes[m]);
        }
        basis.evaluate(basis.frame().lambda(x), v, c);
        for (int i = 0; i < nloc; ++i)
        {
          vt[i] = tangential(v[i], geo.normal);
        }
        const double w = geo.measure * qf.weights[p];
        for (int i = 0; i < nloc; ++i)
        {
          for (int j = 0; j <= i; ++j)
          {
            M[i * nloc + j] += w * dot(vt[i], vt[j]);
          }
        }
      }
      const auto global = dofs.simplex_dofs(f.simplex);
      for (int i = 0; i < nloc; ++i)
      {
        const Index gi = numbering[global[i]];
        if (gi < 0)
        {
          continue;
        }
        for (int j = 0; j < nloc; ++j)
        {
          const Index gj = numbering[global[j]];
          if (gj < 0)
          {
            continue;
          }
          const int k = i >= j ? i * nloc + j : j * nloc + i;
          triplets.emplace_back(static_cast<int>(gi), static_cast<int>(gj), kI * f.eta * M[k]);
        }
      }
    }
  }

  SparseMatrix A(n, n);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

Eigen::VectorXcd assemble_rhs(const DofMap &dofs, const BoundaryData &data,
                              std::span<const Index> numbering, Index n)
{
  const Mesh &mesh = dofs.mesh();
  const int d = mesh.dim();
  const int nloc = dofs.element().size();
  const auto qf = simplex_quadrature(d - 1, 2 * dofs.degree() + 2);
  std::vector<Vec3> v(nloc), c(nloc);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  const auto facets = physical_impedance_facets(mesh, data.eta);
  const auto boundary = mesh.boundary_facets();
  std::size_t next = 0;
  for (const auto &bf : boundary)
  {
    if (bf.label == BoundaryLabel::Wall)
    {
      continue;
    }
    const ImpedanceFacet &f = facets[next++];
    const VectorField &g = bf.label == BoundaryLabel::In ? data.g_in : data.g_out;
    if (!g)
    {
      continue;
    }
    const ElementBasis basis = dofs.basis(f.simplex);
    const FacetGeometry geo = facet_geometry(mesh, f);
    const auto global = dofs.simplex_dofs(f.simplex);
    for (int p = 0; p < qf.size(); ++p)
    {
      Vec3 x{};
      for (int m = 0; m < d; ++m)
      {
        x = x + qf.points[p][m] * mesh.node(f.nodes[m]);
      }
      CVec3 gx = g(x);
      const Complex gn = cdot(gx, geo.normal);
      gx = gx - gn * to_complex(geo.normal);
      basis.evaluate(basis.frame().lambda(x), v, c);
      const double w = geo.measure * qf.weights[p];
      for (int i = 0; i < nloc; ++i)
      {
        const Index gi = numbering[global[i]];
        if (gi >= 0)
        {
          b[gi] += w * cdot(gx, v[i]);
        }
      }
    }
  }
  return b;
}

ComplexSparseSystem assemble(const DofMap &dofs, const PhysicalParams &params,
                             const BoundaryData &data)
{
  params.validate();
  const Mesh &mesh = dofs.mesh();
  std::vector<Index> all(mesh.n_simplices());
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    all[t] = t;
  }
  const Complex g = params.gamma();
  const auto facets = physical_impedance_facets(mesh, data.eta);
  ComplexSparseSystem sys;
  sys.A = assemble_matrix(dofs, g * g, all, facets, dofs.free_numbering(), dofs.n_free());
  sys.b = assemble_rhs(dofs, data, dofs.free_numbering(), dofs.n_free());
  return sys;
}

double l2_relative_error(const DofMap &dofs, const Eigen::VectorXcd &coeffs,
                         const VectorField &exact)
{
  const Mesh &mesh = dofs.mesh();
  const int nloc = dofs.element().size();
  const auto q = simplex_quadrature(mesh.dim(), 2 * dofs.degree() + 2);
  std::vector<Vec3> v(nloc), c(nloc);
  double err = 0.0, ref = 0.0;
  for (Index t = 0; t < mesh.n_simplices(); ++t)
  {
    const ElementBasis basis = dofs.basis(t);
    const auto global = dofs.simplex_dofs(t);
    const double vol = basis.frame().measure();
    for (int p = 0; p < q.size(); ++p)
    {
      basis.evaluate(q.points[p], v, c);
      CVec3 eh{};
      for (int i = 0; i < nloc; ++i)
      {
        eh = eh + coeffs[global[i]] * to_complex(v[i]);
      }
      const CVec3 e = exact(basis.frame().point(q.points[p]));
      const double w = vol * q.weights[p];
      err += w * norm2(eh - e);
      ref += w * norm2(e);
    }
  }
  if (ref == 0.0)
  {
    throw std::domain_error("l2_relative_error: reference field has zero norm");
  }
  return std::sqrt(err / ref);
}

void write_triplets(std::ostream &os, const SparseMatrix &A)
{
  std::string line;
  char buf[32];
  for (int k = 0; k < A.outerSize(); ++k)
  {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
    {
      line = std::to_string(it.row()) + ' ' + std::to_string(it.col());
      for (double part : {it.value().real(), it.value().imag()})
      {
        const auto res = std::to_chars(buf, buf + sizeof buf, part);
        line += ' ';
        line.append(buf, res.ptr);
      }
      os << line << '\n';
    }
  }
}

}  // namespace hoedge
