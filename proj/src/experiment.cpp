// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hoedge
{

namespace
{

constexpr double kGuide2dC = 0.0502, kGuide2dB = 0.00254;
constexpr double kGuide3dC = 0.1004, kGuide3dB = 0.00508, kGuide3dA = 0.01016;

std::string fmt(const char *f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

const char *to_string(PreconditionerKind p)
{
  switch (p)
  {
  case PreconditionerKind::None:
    return "none";
  case PreconditionerKind::Oras:
    return "oras";
  case PreconditionerKind::Oas:
    return "oas";
  }
  return "?";
}

PreconditionerKind parse_preconditioner(const std::string &s)
{
  if (s == "none")
  {
    return PreconditionerKind::None;
  }
  if (s == "oras")
  {
    return PreconditionerKind::Oras;
  }
  if (s == "oas")
  {
    return PreconditionerKind::Oas;
  }
  throw std::invalid_argument("unknown preconditioner '" + s + "' (none, oras, oas)");
}

double parse_frequency(const std::string &s)
{
  if (s == "w1")
  {
    return 16e9;
  }
  if (s == "w2")
  {
    return 32e9;
  }
  if (s == "w3")
  {
    return 64e9;
  }
  std::size_t used = 0;
  double v = 0.0;
  try
  {
    v = std::stod(s, &used);
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used != s.size() || !(v > 0.0))
  {
    throw std::invalid_argument("bad frequency '" + s + "' (w1, w2, w3 or a positive number)");
  }
  return v;
}

void ExperimentConfig::validate() const
{
  if (dim != 2 && dim != 3)
  {
    throw std::invalid_argument("dim must be 2 or 3");
  }
  if (k < 0 || k + 1 > max_degree(dim))
  {
    throw std::invalid_argument("k = " + std::to_string(k) + " unsupported in " +
                                std::to_string(dim) + "d (max " +
                                std::to_string(max_degree(dim) - 1) + ")");
  }
  if (!(mesh_scale > 0.0))
  {
    throw std::invalid_argument("mesh scale must be positive");
  }
  if (!(tol > 0.0) || max_iterations < 1)
  {
    throw std::invalid_argument("tol must be positive and max iterations at least 1");
  }
  if (n_sub < 1 || (n_sub > 1 && overlap < 1))
  {
    throw std::invalid_argument("need n_sub >= 1 and overlap >= 1");
  }
  if (n_sub == 1 && precond != PreconditionerKind::None)
  {
    throw std::invalid_argument("Schwarz preconditioners need at least two subdomains");
  }
}

PhysicalParams experiment_params(const ExperimentConfig &config)
{
  config.validate();
  PhysicalParams params;
  params.epsilon = config.epsilon;
  params.mu = config.mu;
  params.sigma = config.sigma;
  params.omega = config.omega;
  if (config.dim == 3)
  {
    params.omega = te10_setup(config.omega, kGuide3dA, params).omega;
  }
  params.validate();
  return params;
}

MeshSpec experiment_mesh_spec(const ExperimentConfig &config)
{
  config.validate();
  MeshSpec spec;
  spec.dim = config.dim;
  if (config.dim == 2)
  {
    spec.length_x = kGuide2dC;
    spec.length_y = kGuide2dB;
    spec.h = mesh_size_rule(2, experiment_params(config)) * config.mesh_scale;
  }
  else
  {
    PhysicalParams material;
    material.epsilon = config.epsilon;
    material.mu = config.mu;
    spec.length_x = kGuide3dC;
    spec.length_y = kGuide3dB;
    spec.length_z = kGuide3dA;
    spec.h = te10_setup(config.omega, kGuide3dA, material).h * config.mesh_scale;
  }
  return spec;
}

ExperimentResult run_experiment(const ExperimentConfig &config)
{
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  ExperimentResult res;
  res.config = config;

  const PhysicalParams params = experiment_params(config);
  const MeshSpec spec = experiment_mesh_spec(config);
  const ReferenceSolution ref = config.dim == 2 ? ReferenceSolution::plane_wave(params)
                                                : ReferenceSolution::te_mode(params, kGuide3dA);
  res.omega = params.omega;
  res.h = spec.h;

  auto mesh = std::make_shared<Mesh>(generate_waveguide_mesh(spec));
  auto dofs = std::make_shared<DofMap>(*mesh, config.k + 1);
  for (int a = 0; a < config.dim; ++a)
  {
    std::vector<double> xs;
    for (const Vec3 &p : mesh->nodes())
    {
      xs.push_back(p[a]);
    }
    std::sort(xs.begin(), xs.end());
    res.cells[a] = std::unique(xs.begin(), xs.end()) - xs.begin() - 1;
  }
  res.n_dofs = dofs->n_dofs();
  res.n_free = dofs->n_free();

  const BoundaryData bd = ref.boundary_data();
  const ComplexSparseSystem sys = assemble(*dofs, params, bd);
  const CsrMatrix A(sys.A);
  const LinearOperator Aop = A.as_operator();

  GmresOptions opt;
  opt.tol = config.tol;
  opt.max_iterations = config.max_iterations;
  opt.side = config.side;
  opt.stopping = config.stopping;
  opt.seed = config.seed;

  if (config.unpreconditioned)
  {
    GmresOptions np = opt;
    np.max_iterations = config.max_iterations_np;
    np.max_refinements = 0;
    SolveReport rep;
    gmres(Aop, sys.b, {}, np, rep);
    res.iterations_np = rep.iterations;
  }

  std::optional<SchwarzPreconditioner> P;
  LinearOperator Mop;
  if (config.precond != PreconditionerKind::None)
  {
    const Decomposition dec = decompose(*dofs, config.n_sub, config.overlap);
    res.warnings = dec.warnings;
    P.emplace(*dofs, dec, params, bd.eta);
    const SchwarzVariant v =
        config.precond == PreconditionerKind::Oras ? SchwarzVariant::Oras : SchwarzVariant::Oas;
    const SchwarzPreconditioner *pp = &*P;
    Mop = [pp, v](const Eigen::VectorXcd &x, Eigen::VectorXcd &y) { y = pp->apply(v, x); };
  }

  SolveReport rep;
  const Eigen::VectorXcd x = gmres(Aop, sys.b, Mop, opt, rep);
  res.iterations = rep.iterations;
  res.refinement_iterations = rep.refinement_iterations;
  res.converged = rep.converged;
  res.final_residual = rep.final_relative_residual;
  res.solution = dofs->expand(x);

  if (config.spectrum)
  {
    if (res.n_free <= config.max_dense)
    {
      res.spectrum = preconditioned_spectrum(Aop, Mop, res.n_free, config.max_dense);
      res.spectrum_method = "dense";
    }
    else
    {
      res.spectrum = ritz_spectrum(Aop, Mop, res.n_free, config.ritz_steps, config.seed);
      res.spectrum_method = "ritz";
    }
  }

  // the TE field is an exact solution only without losses
  if (config.dim == 2 || config.sigma == 0.0)
  {
    res.l2_error = l2_relative_error(*dofs, res.solution, ref.as_field());
  }

  res.mesh = mesh;
  res.dofs = dofs;
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

void write_csv_header(std::ostream &os)
{
  os << "label,dim,k,omega,sigma,n_sub,overlap,precond,h,n_dofs,n_free,n_iter_np,n_iter,"
        "n_iter_refine,converged,final_residual,spectrum,n_eigs,max_dist,n_outside,"
        "n_on_boundary,l2_error\n";
}

void write_csv_row(std::ostream &os, const ExperimentResult &r)
{
  const auto &c = r.config;
  os << c.label << ',' << c.dim << ',' << c.k << ',' << fmt("%.6g", r.omega) << ','
     << fmt("%.6g", c.sigma) << ',' << c.n_sub << ',' << c.overlap << ',' << to_string(c.precond)
     << ',' << fmt("%.6e", r.h) << ',' << r.n_dofs << ',' << r.n_free << ',';
  if (r.iterations_np)
  {
    os << *r.iterations_np;
  }
  os << ',' << r.iterations << ',' << r.refinement_iterations << ',' << (r.converged ? 1 : 0)
     << ',' << fmt("%.3e", r.final_residual) << ',' << r.spectrum_method << ',';
  if (r.spectrum)
  {
    os << r.spectrum->eigenvalues.size() << ',' << fmt("%.6e", r.spectrum->max_distance) << ','
       << r.spectrum->n_outside << ',' << r.spectrum->n_on_boundary;
  }
  else
  {
    os << ",,,";
  }
  os << ',';
  if (r.l2_error)
  {
    os << fmt("%.6e", *r.l2_error);
  }
  os << '\n';
}

std::vector<ExperimentConfig> preset(const std::string &name)
{
  std::vector<ExperimentConfig> rows;
  auto both = [&](ExperimentConfig c, const std::string &label) {
    c.label = name + "/" + label + "/oras";
    c.precond = PreconditionerKind::Oras;
    rows.push_back(c);
    c.label = name + "/" + label + "/oas";
    c.precond = PreconditionerKind::Oas;
    c.unpreconditioned = false;
    rows.push_back(c);
  };
  ExperimentConfig base;
  base.dim = 2;
  base.k = 2;
  base.omega = 32e9;
  base.sigma = 0.15;
  base.spectrum = true;
  if (name == "table1")
  {
    for (int k = 0; k <= 4; ++k)
    {
      ExperimentConfig c = base;
      c.k = k;
      c.unpreconditioned = true;
      both(c, "k=" + std::to_string(k));
    }
  }
  else if (name == "table2")
  {
    for (const char *w : {"w1", "w2", "w3"})
    {
      ExperimentConfig c = base;
      c.omega = parse_frequency(w);
      c.unpreconditioned = true;
      both(c, w);
    }
  }
  else if (name == "table3")
  {
    for (int n : {2, 4, 8})
    {
      ExperimentConfig c = base;
      c.n_sub = n;
      both(c, "nsub=" + std::to_string(n));
    }
  }
  else if (name == "table4")
  {
    for (int ov : {1, 2, 4})
    {
      ExperimentConfig c = base;
      c.overlap = ov;
      both(c, "overlap=" + std::to_string(ov) + "h");
    }
  }
  else if (name == "table5" || name == "table6")
  {
    base.dim = 3;
    base.spectrum = false;
    base.sigma = name == "table5" ? 0.15 : 0.0;
    for (int k = 0; k <= 2; ++k)
    {
      ExperimentConfig c = base;
      c.k = k;
      both(c, "k=" + std::to_string(k) + ",nsub=2");
    }
    for (int n : {4, 8})
    {
      ExperimentConfig c = base;
      c.k = 1;
      c.n_sub = n;
      both(c, "k=1,nsub=" + std::to_string(n));
    }
  }
  else
  {
    throw std::invalid_argument("unknown preset '" + name + "' (table1 .. table6)");
  }
  return rows;
}

namespace
{

// Uniform bins over the bounding box; each simplex is registered in every
// bin its bounding box touches.
class PointLocator
{
public:
  explicit PointLocator(const Mesh &mesh) : mesh_(mesh)
  {
    lo_ = mesh.lower_corner();
    const Vec3 ext = mesh.upper_corner() - lo_;
    const int d = mesh.dim();
    const double per_axis = std::pow(double(mesh.n_simplices()) / 4.0, 1.0 / d);
    double vol = 1.0;
    for (int a = 0; a < d; ++a)
    {
      vol *= ext[a];
    }
    const double cell = std::pow(vol, 1.0 / d) / std::max(per_axis, 1.0);
    for (int a = 0; a < 3; ++a)
    {
      n_[a] = a < d ? std::max(1, int(std::ceil(ext[a] / cell))) : 1;
      size_[a] = a < d ? ext[a] / n_[a] : 1.0;
    }
    bins_.resize(std::size_t(n_[0]) * n_[1] * n_[2]);
    for (Index t = 0; t < mesh.n_simplices(); ++t)
    {
      Vec3 bmin = mesh.node(mesh.simplex(t)[0]), bmax = bmin;
      for (Index v : mesh.simplex(t))
      {
        for (int a = 0; a < 3; ++a)
        {
          bmin[a] = std::min(bmin[a], mesh.node(v)[a]);
          bmax[a] = std::max(bmax[a], mesh.node(v)[a]);
        }
      }
      const auto i0 = bin(bmin), i1 = bin(bmax);
      for (int i = i0[0]; i <= i1[0]; ++i)
        for (int j = i0[1]; j <= i1[1]; ++j)
          for (int k = i0[2]; k <= i1[2]; ++k)
          {
            bins_[(std::size_t(k) * n_[1] + j) * n_[0] + i].push_back(t);
          }
    }
  }

  // simplex containing x and its local barycentric coordinates
  std::optional<std::pair<Index, std::array<double, 4>>> locate(const Vec3 &x) const
  {
    const auto b = bin(x);
    for (Index t : bins_[(std::size_t(b[2]) * n_[1] + b[1]) * n_[0] + b[0]])
    {
      const auto l = BarycentricFrame::of(mesh_, t).lambda(x);
      bool in = true;
      for (int i = 0; i <= mesh_.dim(); ++i)
      {
        in = in && l[i] >= -1e-10;
      }
      if (in)
      {
        return std::pair{t, l};
      }
    }
    return std::nullopt;
  }

private:
  std::array<int, 3> bin(const Vec3 &x) const
  {
    std::array<int, 3> b{};
    for (int a = 0; a < 3; ++a)
    {
      b[a] = std::clamp(int((x[a] - lo_[a]) / size_[a]), 0, n_[a] - 1);
    }
    return b;
  }

  const Mesh &mesh_;
  Vec3 lo_{};
  std::array<int, 3> n_{};
  std::array<double, 3> size_{};
  std::vector<std::vector<Index>> bins_;
};

}  // namespace

std::vector<SliceSample> field_slice(const DofMap &dofs, const Eigen::VectorXcd &coeffs,
                                     int axis, double position, int n)
{
  const Mesh &mesh = dofs.mesh();
  const int d = mesh.dim();
  if (axis < 0 || axis >= d)
  {
    throw std::invalid_argument("field_slice: axis out of range");
  }
  if (n < 1)
  {
    throw std::invalid_argument("field_slice: need at least one sample per direction");
  }
  const Vec3 lo = mesh.lower_corner(), hi = mesh.upper_corner();
  if (position < lo[axis] || position > hi[axis])
  {
    throw std::invalid_argument("field_slice: plane does not intersect the domain");
  }
  if (coeffs.size() != dofs.n_dofs())
  {
    throw std::invalid_argument("field_slice: expected a full dof vector");
  }
  std::vector<int> others;
  for (int a = 0; a < d; ++a)
  {
    if (a != axis)
    {
      others.push_back(a);
    }
  }
  // cell-centred samples stay off the walls
  auto coord = [&](int a, int i) { return lo[a] + (i + 0.5) * (hi[a] - lo[a]) / n; };
  const PointLocator loc(mesh);
  std::vector<SliceSample> out;
  const int n2 = others.size() > 1 ? n : 1;
  for (int j = 0; j < n2; ++j)
  {
    for (int i = 0; i < n; ++i)
    {
      Vec3 x{};
      x[axis] = position;
      x[others[0]] = coord(others[0], i);
      if (others.size() > 1)
      {
        x[others[1]] = coord(others[1], j);
      }
      const auto hit = loc.locate(x);
      if (!hit)
      {
        throw std::runtime_error("field_slice: sample point not found in the mesh");
      }
      const FieldSample s = evaluate_field(dofs, coeffs, hit->first, hit->second);
      double re2 = 0.0;
      for (int a = 0; a < 3; ++a)
      {
        re2 += s.value[a].real() * s.value[a].real();
      }
      out.push_back({x, std::sqrt(re2)});
    }
  }
  return out;
}

void emit_field_slices(std::ostream &os, const DofMap &dofs, const Eigen::VectorXcd &coeffs,
                       int axis, const std::vector<double> &positions, int n)
{
  os << "slice,axis,position,x,y,z,abs_re_e\n";
  char buf[160];
  for (std::size_t k = 0; k < positions.size(); ++k)
  {
    for (const auto &s : field_slice(dofs, coeffs, axis, positions[k], n))
    {
      std::snprintf(buf, sizeof buf, "%zu,%d,%.9g,%.9g,%.9g,%.9g,%.9g\n", k, axis, positions[k],
                    s.x[0], s.x[1], s.x[2], s.abs_re);
      os << buf;
    }
  }
}

void write_solution(std::ostream &os, const Eigen::VectorXcd &coeffs)
{
  os << "index,re,im\n";
  char buf[96];
  for (Index i = 0; i < coeffs.size(); ++i)
  {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(i),
                  coeffs[i].real(), coeffs[i].imag());
    os << buf;
  }
}

}  // namespace hoedge
