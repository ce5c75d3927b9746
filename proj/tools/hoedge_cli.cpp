// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

// Waveguide experiment driver: one run from flags, or a table preset.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hoedge/experiment.hpp"

using namespace hoedge;

namespace
{

std::ofstream open_out(const std::string &path)
{
  std::ofstream os(path);
  if (!os)
  {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return os;
}

// results.csv -> results.<label>.eig.csv
std::string sibling(const std::string &out, const std::string &label, const std::string &ext)
{
  std::filesystem::path p(out.empty() ? "hoedge" : out);
  std::string tag = label;
  for (char &c : tag)
  {
    if (c == '/' || c == ',' || c == '=')
    {
      c = '_';
    }
  }
  const std::string stem = p.stem().string();
  p.replace_filename(stem + "." + tag + ext);
  return p.string();
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"High-order edge element waveguide solver with Schwarz-preconditioned GMRES"};
  ExperimentConfig cfg;
  std::string omega = "w2", precond = "oras", preset_name, out, stopping = "rhs";
  std::string mesh_out, solution_out, slices_out;
  std::vector<double> slice_at;
  int slice_axis = 0, slice_n = 16;
  bool left = false, quiet = false;

  app.add_option("--dim", cfg.dim, "Space dimension")->check(CLI::IsMember({2, 3}));
  app.add_option("--degree,-k", cfg.k, "k, polynomial degree r = k+1");
  app.add_option("--omega", omega,
                 "Angular frequency: w1, w2, w3 or rad/s (3d: omega_beta fixing beta)");
  app.add_option("--sigma", cfg.sigma, "Conductivity (S/m)");
  app.add_option("--nsub", cfg.n_sub, "Number of strips");
  app.add_option("--overlap", cfg.overlap, "Total overlap in element layers (delta = overlap*h)");
  app.add_option("--precond", precond, "none, oras or oas");
  app.add_flag("--spectrum", cfg.spectrum, "Eigenvalues of the preconditioned matrix");
  app.add_flag("--np", cfg.unpreconditioned, "Also count unpreconditioned GMRES iterations");
  app.add_option("--seed", cfg.seed, "Seed of the random initial guess");
  app.add_option("--tol", cfg.tol, "GMRES relative tolerance");
  app.add_option("--max-iter", cfg.max_iterations, "GMRES iteration cap");
  app.add_option("--max-iter-np", cfg.max_iterations_np, "Cap for the unpreconditioned run");
  app.add_flag("--left", left, "Left preconditioning (default right)");
  app.add_option("--stopping", stopping, "Residual divided by: rhs (||b||) or initial (||r0||)")
      ->check(CLI::IsMember({"rhs", "initial"}));
  app.add_option("--scale", cfg.mesh_scale, "Multiplier on the mesh size rule");
  app.add_option("--max-dense", cfg.max_dense, "Largest system for a dense spectrum");
  app.add_option("--ritz-steps", cfg.ritz_steps, "Arnoldi steps for larger spectra");
  app.add_option("--preset", preset_name, "Reference sweep: table1 .. table6");
  app.add_option("--out,-o", out, "Results CSV (default stdout)");
  app.add_option("--mesh-out", mesh_out, "Mesh dump (single run)");
  app.add_option("--solution-out", solution_out, "Full dof vector CSV (single run)");
  app.add_option("--slices-out", slices_out, "|Re E| on planes (single run)");
  app.add_option("--slice-axis", slice_axis, "Axis normal to the slices")
      ->check(CLI::Range(0, 2));
  app.add_option("--slice-at", slice_at, "Slice positions (m)");
  app.add_option("--slice-n", slice_n, "Samples per direction on a slice");
  app.add_flag("--quiet,-q", quiet, "No progress on stderr");
  CLI11_PARSE(app, argc, argv);

  try
  {
    cfg.omega = parse_frequency(omega);
    cfg.precond = parse_preconditioner(precond);
    cfg.side = left ? PreconditionerSide::Left : PreconditionerSide::Right;
    cfg.stopping = stopping == "initial" ? StoppingRule::InitialResidual : StoppingRule::RhsNorm;

    std::vector<ExperimentConfig> runs;
    if (!preset_name.empty())
    {
      for (ExperimentConfig c : preset(preset_name))
      {
        // run controls carry over, physics comes from the preset
        c.seed = cfg.seed;
        c.tol = cfg.tol;
        c.max_iterations = cfg.max_iterations;
        c.max_iterations_np = cfg.max_iterations_np;
        c.side = cfg.side;
        c.stopping = cfg.stopping;
        c.mesh_scale = cfg.mesh_scale;
        c.max_dense = cfg.max_dense;
        c.ritz_steps = cfg.ritz_steps;
        runs.push_back(c);
      }
    }
    else
    {
      cfg.label = "run";
      runs.push_back(cfg);
    }
    const bool single = runs.size() == 1;
    if (!single && (!mesh_out.empty() || !solution_out.empty() || !slices_out.empty()))
    {
      throw std::invalid_argument("mesh, solution and slice dumps need a single run");
    }

    std::ofstream file;
    if (!out.empty())
    {
      file = open_out(out);
    }
    std::ostream &os = out.empty() ? std::cout : file;
    write_csv_header(os);
    for (const auto &c : runs)
    {
      if (!quiet)
      {
        std::cerr << "[hoedge] " << c.label << " ..." << std::flush;
      }
      const ExperimentResult r = run_experiment(c);
      if (!quiet)
      {
        std::cerr << " N=" << r.n_free << " iter=" << r.iterations << " ("
                  << r.wall_seconds << " s)\n";
        for (const auto &w : r.warnings)
        {
          std::cerr << "[hoedge] warning: " << w << '\n';
        }
      }
      write_csv_row(os, r);
      os.flush();
      if (r.spectrum)
      {
        auto eos = open_out(sibling(out, c.label, ".eig.csv"));
        write_eigenvalues_csv(eos, r.spectrum->eigenvalues);
      }
      if (!mesh_out.empty())
      {
        auto mos = open_out(mesh_out);
        write_mesh(mos, *r.mesh);
      }
      if (!solution_out.empty())
      {
        auto sos = open_out(solution_out);
        write_solution(sos, r.solution);
      }
      if (!slices_out.empty())
      {
        if (slice_at.empty())
        {
          throw std::invalid_argument("--slices-out needs --slice-at");
        }
        auto fos = open_out(slices_out);
        emit_field_slices(fos, *r.dofs, r.solution, slice_axis, slice_at, slice_n);
      }
    }
  }
  catch (const std::exception &e)
  {
    std::cerr << "hoedge: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
