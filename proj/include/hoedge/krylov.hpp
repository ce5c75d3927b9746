// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_KRYLOV_HPP
#define HOEDGE_KRYLOV_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hoedge/assembly.hpp"
#include "hoedge/kernels.hpp"

namespace hoedge
{

// y = Op(x); y is resized by the caller.
using LinearOperator = std::function<void(const Eigen::VectorXcd &x, Eigen::VectorXcd &y)>;

// Sparse matrix in CSR form, multiplied through the dispatched kernels.
class CsrMatrix
{
public:
  explicit CsrMatrix(const SparseMatrix &A);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  kernels::CsrView view() const;
  void multiply(const Eigen::VectorXcd &x, Eigen::VectorXcd &y) const;
  LinearOperator as_operator() const;

private:
  Index rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_, col_;
  std::vector<Complex> val_;
};

enum class PreconditionerSide
{
  Right,
  Left
};

// What the residual is divided by in the stopping test.
enum class StoppingRule
{
  RhsNorm,         // ||b||, or ||M^-1 b|| with left preconditioning
  InitialResidual  // ||r0||, or ||M^-1 r0|| with left preconditioning
};

struct GmresOptions
{
  double tol = 1e-6;
  int max_iterations = 2000;
  PreconditionerSide side = PreconditionerSide::Right;
  StoppingRule stopping = StoppingRule::RhsNorm;
  // Initial guess: explicit x0 if given, otherwise random with components
  // uniform in [-1,1] + i[-1,1] drawn from std::mt19937_64(seed), or zero
  // when random_initial_guess is false.
  std::optional<Eigen::VectorXcd> x0;
  bool random_initial_guess = true;
  std::uint64_t seed = 1;
  // Extra cycles restarted from the current iterate while the true residual
  // is above tol. The random initial guess makes ||r0|| / ||b|| reach 1e10
  // at high degree, and the first cycle then stops on its recurrence
  // residual with a true residual limited by rounding.
  int max_refinements = 3;
};

struct SolveReport
{
  int iterations = 0;             // first cycle: recurrence residual <= tol
  int refinement_iterations = 0;  // spent in the restarted cycles
  bool converged = false;         // true residual <= tol (or recurrence if no refinement)
  // Relative residual estimate after each iteration, starting with the
  // initial one, across all cycles. With right preconditioning (or none)
  // this is ||b - A x_j|| / ||b||; with left it is the preconditioned
  // residual.
  std::vector<double> residual_history;
  double final_relative_residual = 0.0;  // true ||b - A x|| / ||b||
  double wall_seconds = 0.0;
};

// Full (non-restarted) GMRES with modified Gram-Schmidt plus one
// reorthogonalization pass. precond may be empty. max_iterations bounds the
// total over all cycles.
Eigen::VectorXcd gmres(const LinearOperator &A, const Eigen::VectorXcd &b,
                       const LinearOperator &precond, const GmresOptions &options,
                       SolveReport &report);

struct SpectrumReport
{
  std::vector<Complex> eigenvalues;  // all of them (dense) or converged Ritz values
  bool complete = true;              // false when only Ritz values are known
  double max_distance = 0.0;         // max |lambda - 1|
  Index n_outside = 0;               // |lambda - 1| > 1 + tol
  Index n_on_boundary = 0;           // ||lambda - 1| - 1| <= tol
  Index n_inside = 0;
};

// Counts relative to the unit disk centred at 1.
SpectrumReport classify_spectrum(std::vector<Complex> eigenvalues, double tol = 1e-10);

// Eigenvalues of a dense column-major n x n matrix (LAPACK zgeev).
std::vector<Complex> dense_eigenvalues(Eigen::MatrixXcd M);

// All eigenvalues of M^-1 A, formed column by column. Rejects n above
// max_dense.
SpectrumReport preconditioned_spectrum(const LinearOperator &A, const LinearOperator &precond,
                                       Index n, Index max_dense = 20000);

// Ritz values of M^-1 A from an m-step Arnoldi run, keeping those whose
// residual estimate is below rel_tol |theta|. Cheap certificate for the
// outlying part of the spectrum when a dense solve is too large.
SpectrumReport ritz_spectrum(const LinearOperator &A, const LinearOperator &precond, Index n,
                             int m, std::uint64_t seed, double rel_tol = 1e-8);

// "re,im" per line.
void write_eigenvalues_csv(std::ostream &os, const std::vector<Complex> &eigenvalues);

}  // namespace hoedge

#endif  // HOEDGE_KRYLOV_HPP
