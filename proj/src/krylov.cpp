// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "hoedge/krylov.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace hoedge
{

CsrMatrix::CsrMatrix(const SparseMatrix &A) : rows_(A.rows()), cols_(A.cols())
{
  const Eigen::SparseMatrix<Complex, Eigen::RowMajor, int> R(A);
  row_ptr_.assign(R.outerIndexPtr(), R.outerIndexPtr() + R.outerSize() + 1);
  col_.assign(R.innerIndexPtr(), R.innerIndexPtr() + R.nonZeros());
  val_.assign(R.valuePtr(), R.valuePtr() + R.nonZeros());
}

kernels::CsrView CsrMatrix::view() const
{
  return {rows_, row_ptr_.data(), col_.data(), val_.data()};
}

void CsrMatrix::multiply(const Eigen::VectorXcd &x, Eigen::VectorXcd &y) const
{
  if (x.size() != cols_)
  {
    throw std::invalid_argument("CsrMatrix::multiply: dimension mismatch");
  }
  y.resize(rows_);
  kernels::csr_matvec(view(), x.data(), y.data());
}

LinearOperator CsrMatrix::as_operator() const
{
  return [this](const Eigen::VectorXcd &x, Eigen::VectorXcd &y) { multiply(x, y); };
}

namespace
{

double vnorm(const Eigen::VectorXcd &x)
{
  return kernels::nrm2(x.size(), x.data());
}

// Arnoldi step on w against the basis V[0..j], modified Gram-Schmidt with a
// second pass. Returns the coefficients in h (size j+2 on exit).
void orthogonalize(const std::vector<Eigen::VectorXcd> &V, int j, Eigen::VectorXcd &w,
                   std::vector<Complex> &h)
{
  h.assign(j + 2, Complex{});
  for (int pass = 0; pass < 2; ++pass)
  {
    for (int i = 0; i <= j; ++i)
    {
      const Complex c = kernels::dotc(w.size(), V[i].data(), w.data());
      kernels::axpy(w.size(), -c, V[i].data(), w.data());
      h[i] += c;
    }
  }
  h[j + 1] = vnorm(w);
}

struct Givens
{
  double c = 1.0;
  Complex s{};

  void apply(Complex &x, Complex &y) const
  {
    const Complex t = c * x + s * y;
    y = -std::conj(s) * x + c * y;
    x = t;
  }
};

Givens make_givens(Complex a, Complex b)
{
  Givens g;
  if (b == Complex{})
  {
    return g;
  }
  if (a == Complex{})
  {
    g.c = 0.0;
    g.s = std::conj(b) / std::abs(b);
    return g;
  }
  const double t = std::hypot(std::abs(a), std::abs(b));
  g.c = std::abs(a) / t;
  g.s = (a / std::abs(a)) * std::conj(b) / t;
  return g;
}

Eigen::VectorXcd random_vector(Index n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd x(n);
  for (Index i = 0; i < n; ++i)
  {
    const double re = u(rng);
    const double im = u(rng);
    x[i] = Complex(re, im);
  }
  return x;
}

}  // namespace

namespace
{

struct Cycle
{
  const LinearOperator &A;
  const LinearOperator &precond;
  bool left, right;
  double tol;
};

// One full GMRES cycle from x. Appends the relative residual estimates
// (against denom) to history and returns the number of iterations.
int gmres_cycle(const Cycle &c, const Eigen::VectorXcd &b, double denom, int budget,
                Eigen::VectorXcd &x, std::vector<double> &history, bool &reached)
{
  const Index n = b.size();
  Eigen::VectorXcd r(n), t(n), w(n), z(n);
  c.A(x, t);
  r = b - t;
  if (c.left)
  {
    c.precond(r, t);
    r = t;
  }
  const double beta = vnorm(r);
  reached = beta / denom <= c.tol;
  if (reached || budget <= 0)
  {
    return 0;
  }

  std::vector<Eigen::VectorXcd> V;
  V.push_back(r / beta);
  std::vector<std::vector<Complex>> H;  // triangularized columns
  std::vector<Givens> rot;
  std::vector<Complex> g = {beta};
  std::vector<Complex> h;

  int m = 0;
  while (m < budget)
  {
    const int j = m;
    if (c.right)
    {
      c.precond(V[j], z);
      c.A(z, w);
    }
    else if (c.left)
    {
      c.A(V[j], z);
      c.precond(z, w);
    }
    else
    {
      c.A(V[j], w);
    }
    orthogonalize(V, j, w, h);
    const double hn = h[j + 1].real();
    const bool breakdown = hn <= 1e-14 * std::max(std::abs(h[j]), hn);
    if (!breakdown)
    {
      V.push_back(w / hn);
    }
    for (int i = 0; i < j; ++i)
    {
      rot[i].apply(h[i], h[i + 1]);
    }
    rot.push_back(make_givens(h[j], h[j + 1]));
    rot[j].apply(h[j], h[j + 1]);
    h[j + 1] = 0.0;
    g.push_back(Complex{});
    rot[j].apply(g[j], g[j + 1]);
    H.push_back(h);
    ++m;
    const double res = std::abs(g[j + 1]) / denom;
    history.push_back(res);
    if (res <= c.tol || breakdown)
    {
      reached = true;
      break;
    }
  }

  std::vector<Complex> y(m);
  for (int i = m - 1; i >= 0; --i)
  {
    Complex s = g[i];
    for (int k = i + 1; k < m; ++k)
    {
      s -= H[k][i] * y[k];
    }
    y[i] = s / H[i][i];
  }
  Eigen::VectorXcd dx = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < m; ++i)
  {
    kernels::axpy(n, y[i], V[i].data(), dx.data());
  }
  if (c.right)
  {
    c.precond(dx, z);
    x += z;
  }
  else
  {
    x += dx;
  }
  return m;
}

}  // namespace

Eigen::VectorXcd gmres(const LinearOperator &A, const Eigen::VectorXcd &b,
                       const LinearOperator &precond, const GmresOptions &options,
                       SolveReport &report)
{
  const auto start = std::chrono::steady_clock::now();
  report = SolveReport{};
  const Index n = b.size();
  const bool left = precond && options.side == PreconditionerSide::Left;
  const bool right = precond && options.side == PreconditionerSide::Right;

  Eigen::VectorXcd x;
  if (options.x0)
  {
    if (options.x0->size() != n)
    {
      throw std::invalid_argument("gmres: initial guess has the wrong size");
    }
    x = *options.x0;
  }
  else if (options.random_initial_guess)
  {
    x = random_vector(n, options.seed);
  }
  else
  {
    x = Eigen::VectorXcd::Zero(n);
  }

  const double bnorm = vnorm(b);
  Eigen::VectorXcd t(n);
  auto true_residual = [&]() {
    A(x, t);
    t = b - t;
    return bnorm > 0.0 ? vnorm(t) / bnorm : vnorm(t);
  };
  if (bnorm == 0.0)
  {
    x.setZero();
    report.converged = true;
    report.residual_history.push_back(0.0);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return x;
  }

  double denom = bnorm;
  if (left)
  {
    precond(b, t);
    denom = vnorm(t);
  }
  {
    A(x, t);
    t = b - t;
    Eigen::VectorXcd u = t;
    if (left)
    {
      precond(t, u);
    }
    const double r0 = vnorm(u);
    if (options.stopping == StoppingRule::InitialResidual && r0 > 0.0)
    {
      denom = r0;
    }
    report.residual_history.push_back(r0 / denom);
  }

  const Cycle cycle{A, precond, left, right, options.tol};
  bool reached = false;
  report.iterations = gmres_cycle(cycle, b, denom, options.max_iterations, x,
                                  report.residual_history, reached);
  report.converged = reached;
  report.final_relative_residual = true_residual();
  // residual check on the same quantity the recurrence tracked
  auto tracked = [&]() {
    A(x, t);
    t = b - t;
    if (!left)
    {
      return vnorm(t) / denom;
    }
    Eigen::VectorXcd u(n);
    precond(t, u);
    return vnorm(u) / denom;
  };
  for (int k = 0; reached && k < options.max_refinements; ++k)
  {
    if (tracked() <= options.tol)
    {
      break;
    }
    const int budget = options.max_iterations - report.iterations - report.refinement_iterations;
    const int it = gmres_cycle(cycle, b, denom, budget, x, report.residual_history, reached);
    report.refinement_iterations += it;
    report.final_relative_residual = true_residual();
    if (it == 0)
    {
      break;
    }
  }
  if (options.max_refinements > 0)
  {
    report.converged = tracked() <= options.tol;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return x;
}

SpectrumReport classify_spectrum(std::vector<Complex> eigenvalues, double tol)
{
  SpectrumReport rep;
  for (const Complex &l : eigenvalues)
  {
    const double d = std::abs(l - 1.0);
    rep.max_distance = std::max(rep.max_distance, d);
    if (std::abs(d - 1.0) <= tol)
    {
      ++rep.n_on_boundary;
    }
    else if (d > 1.0 + tol)
    {
      ++rep.n_outside;
    }
    else
    {
      ++rep.n_inside;
    }
  }
  rep.eigenvalues = std::move(eigenvalues);
  return rep;
}

std::vector<Complex> dense_eigenvalues(Eigen::MatrixXcd M)
{
  const lapack_int n = static_cast<lapack_int>(M.rows());
  if (M.cols() != M.rows())
  {
    throw std::invalid_argument("dense_eigenvalues: matrix must be square");
  }
  std::vector<Complex> w(n);
  if (n == 0)
  {
    return w;
  }
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, M.data(), n, w.data(),
                                        nullptr, 1, nullptr, 1);
  if (info != 0)
  {
    throw std::runtime_error("dense_eigenvalues: zgeev failed with info " + std::to_string(info));
  }
  return w;
}

SpectrumReport preconditioned_spectrum(const LinearOperator &A, const LinearOperator &precond,
                                       Index n, Index max_dense)
{
  if (n > max_dense)
  {
    throw std::invalid_argument("preconditioned_spectrum: n = " + std::to_string(n) +
                                " exceeds the dense limit " + std::to_string(max_dense));
  }
  Eigen::MatrixXcd M(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n), t(n), u(n);
  for (Index j = 0; j < n; ++j)
  {
    e[j] = 1.0;
    A(e, t);
    if (precond)
    {
      precond(t, u);
      M.col(j) = u;
    }
    else
    {
      M.col(j) = t;
    }
    e[j] = 0.0;
  }
  return classify_spectrum(dense_eigenvalues(std::move(M)));
}

SpectrumReport ritz_spectrum(const LinearOperator &A, const LinearOperator &precond, Index n,
                             int m, std::uint64_t seed, double rel_tol)
{
  m = static_cast<int>(std::min<Index>(m, n));
  std::vector<Eigen::VectorXcd> V;
  Eigen::VectorXcd v = random_vector(n, seed);
  V.push_back(v / vnorm(v));
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  Eigen::VectorXcd w(n), z(n);
  std::vector<Complex> h;
  int k = 0;
  bool invariant = false;
  for (; k < m; ++k)
  {
    A(V[k], z);
    if (precond)
    {
      precond(z, w);
    }
    else
    {
      w = z;
    }
    orthogonalize(V, k, w, h);
    for (int i = 0; i <= k + 1; ++i)
    {
      H(i, k) = h[i];
    }
    if (h[k + 1].real() <= 1e-14 * H.col(k).norm())
    {
      invariant = true;
      ++k;
      break;
    }
    V.push_back(w / h[k + 1].real());
  }
  const lapack_int mk = k;
  Eigen::MatrixXcd Hk = H.topLeftCorner(mk, mk);
  std::vector<Complex> theta(mk);
  Eigen::MatrixXcd Y(mk, mk);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', mk, Hk.data(), mk,
                                        theta.data(), nullptr, 1, Y.data(), mk);
  if (info != 0)
  {
    throw std::runtime_error("ritz_spectrum: zgeev failed with info " + std::to_string(info));
  }
  const double hlast = invariant ? 0.0 : std::abs(H(mk, mk - 1));
  std::vector<Complex> kept;
  for (lapack_int i = 0; i < mk; ++i)
  {
    const double resid = hlast * std::abs(Y(mk - 1, i)) / Y.col(i).norm();
    if (resid <= rel_tol * std::max(1.0, std::abs(theta[i])))
    {
      kept.push_back(theta[i]);
    }
  }
  SpectrumReport rep = classify_spectrum(std::move(kept));
  rep.complete = invariant && mk == n;
  return rep;
}

void write_eigenvalues_csv(std::ostream &os, const std::vector<Complex> &eigenvalues)
{
  os << "re,im\n";
  char buf[64];
  for (const Complex &l : eigenvalues)
  {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", l.real(), l.imag());
    os << buf;
  }
}

}  // namespace hoedge
