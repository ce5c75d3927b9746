// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_EXPERIMENT_HPP
#define HOEDGE_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hoedge/krylov.hpp"
#include "hoedge/schwarz.hpp"

namespace hoedge
{

enum class PreconditionerKind
{
  None,
  Oras,
  Oas
};

const char *to_string(PreconditionerKind p);
PreconditionerKind parse_preconditioner(const std::string &s);

// "w1", "w2", "w3" (16, 32, 64 GHz used directly as rad/s) or a number.
double parse_frequency(const std::string &s);

//
// One run of the waveguide pipeline. In 2d omega is the angular frequency;
// in 3d it is omega_beta, which fixes beta and through the TE10 dispersion
// relation the actual frequency. Geometry of the reference guide:
// 2d c x b = 0.0502 x 0.00254, 3d c x b x a = 0.1004 x 0.00508 x 0.01016.
//
struct ExperimentConfig
{
  std::string label;
  int dim = 2;
  int k = 2;  // polynomial degree r = k + 1
  double omega = 32e9;
  double sigma = 0.15;
  double epsilon = 8.85e-12;
  double mu = 1.26e-6;
  int n_sub = 2;
  int overlap = 2;  // total overlap in element layers
  PreconditionerKind precond = PreconditionerKind::Oras;
  bool spectrum = false;
  bool unpreconditioned = false;  // also report N_iterNp
  double mesh_scale = 1.0;        // multiplies the h rule
  std::uint64_t seed = 1;
  double tol = 1e-6;
  int max_iterations = 2000;
  int max_iterations_np = 5000;
  PreconditionerSide side = PreconditionerSide::Right;
  StoppingRule stopping = StoppingRule::RhsNorm;
  Index max_dense = 5000;  // larger spectra fall back to Ritz values
  int ritz_steps = 200;

  void validate() const;
};

struct ExperimentResult
{
  ExperimentConfig config;
  double h = 0.0;
  double omega = 0.0;  // actual angular frequency
  std::array<Index, 3> cells{0, 0, 0};
  Index n_dofs = 0;  // all dofs, wall ones included
  Index n_free = 0;
  std::optional<int> iterations_np;
  int iterations = 0;
  int refinement_iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  std::string spectrum_method = "none";  // none | dense | ritz
  std::optional<SpectrumReport> spectrum;
  std::optional<double> l2_error;  // when an exact solution is known
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;  // not written to the CSV

  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const DofMap> dofs;
  Eigen::VectorXcd solution;  // full dof vector
};

// Material and frequency (the actual one in 3d) of a run, and its mesh.
PhysicalParams experiment_params(const ExperimentConfig &config);
MeshSpec experiment_mesh_spec(const ExperimentConfig &config);

ExperimentResult run_experiment(const ExperimentConfig &config);

// Stable, deterministic CSV (no timings).
void write_csv_header(std::ostream &os);
void write_csv_row(std::ostream &os, const ExperimentResult &r);

// Reference sweeps: table1..table4 (2d) and table5, table6 (3d).
// Every row is expanded into an ORAS and an OAS run.
std::vector<ExperimentConfig> preset(const std::string &name);

//
// |Re E| sampled on the plane x_axis = position, on an n x n grid inset
// from the walls (n points along y in 2d).
//
struct SliceSample
{
  Vec3 x{};
  double abs_re = 0.0;
};

std::vector<SliceSample> field_slice(const DofMap &dofs, const Eigen::VectorXcd &coeffs,
                                     int axis, double position, int n);

// "slice,axis,position,x,y,z,abs_re_e" for every requested plane.
void emit_field_slices(std::ostream &os, const DofMap &dofs, const Eigen::VectorXcd &coeffs,
                       int axis, const std::vector<double> &positions, int n);

// "index,re,im" per full dof.
void write_solution(std::ostream &os, const Eigen::VectorXcd &coeffs);

}  // namespace hoedge

#endif  // HOEDGE_EXPERIMENT_HPP
