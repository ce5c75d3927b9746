// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "hoedge/krylov.hpp"

using namespace hoedge;

namespace
{

Eigen::MatrixXcd random_dense(Index n, std::uint64_t seed, double shift)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd M(n, n);
  for (Index i = 0; i < n; ++i)
  {
    for (Index j = 0; j < n; ++j)
    {
      M(i, j) = Complex(g(rng), g(rng)) / std::sqrt(double(n));
    }
  }
  M.diagonal().array() += shift;
  return M;
}

SparseMatrix to_sparse(const Eigen::MatrixXcd &M)
{
  return M.sparseView();
}

LinearOperator dense_op(const Eigen::MatrixXcd &M)
{
  return [&M](const Eigen::VectorXcd &x, Eigen::VectorXcd &y) { y = M * x; };
}

}  // namespace

TEST_CASE("csr matrix multiplies like the sparse source")
{
  const auto M = random_dense(40, 1, 0.0);
  SparseMatrix S = to_sparse(M);
  S.prune([](Index i, Index j, const Complex &) { return (i + 2 * j) % 3 != 0; });
  const CsrMatrix A(S);
  CHECK(A.rows() == 40);
  Eigen::VectorXcd x = Eigen::VectorXcd::Random(40), y;
  A.multiply(x, y);
  CHECK((y - S * x).norm() < 1e-13 * (S * x).norm());
  Eigen::VectorXcd bad(3);
  CHECK_THROWS_AS(A.multiply(bad, y), std::invalid_argument);
}

TEST_CASE("identity converges in one iteration")
{
  const Index n = 30;
  const auto I = Eigen::MatrixXcd::Identity(n, n).eval();
  Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
  SolveReport rep;
  const auto x = gmres(dense_op(I), b, {}, {}, rep);
  CHECK(rep.iterations == 1);
  CHECK(rep.converged);
  CHECK((x - b).norm() < 1e-12 * b.norm());
}

TEST_CASE("agrees with a dense solve")
{
  for (Index n : {5, 60, 300})
  {
    CAPTURE(n);
    const auto M = random_dense(n, 7 + n, 3.0);
    Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
    const Eigen::VectorXcd ref = M.partialPivLu().solve(b);
    GmresOptions opt;
    opt.tol = 1e-12;
    SolveReport rep;
    const auto x = gmres(dense_op(M), b, {}, opt, rep);
    CHECK(rep.converged);
    CHECK((x - ref).norm() < 1e-9 * ref.norm());
    CHECK(rep.final_relative_residual <= 1e-11);
    for (std::size_t i = 1; i < rep.residual_history.size(); ++i)
    {
      CHECK(rep.residual_history[i] <= rep.residual_history[i - 1] * (1 + 1e-12));
    }
  }
}

TEST_CASE("full gmres terminates in at most n steps")
{
  const Index n = 25;
  const auto M = random_dense(n, 99, 0.0);  // no shift: slow convergence
  Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
  GmresOptions opt;
  opt.tol = 1e-10;
  opt.max_refinements = 0;
  SolveReport rep;
  gmres(dense_op(M), b, {}, opt, rep);
  CHECK(rep.iterations <= n);
  CHECK(rep.converged);
}

TEST_CASE("exact preconditioner gives one iteration on both sides")
{
  const Index n = 50;
  const auto M = random_dense(n, 4, 1.0);
  const Eigen::MatrixXcd Minv = M.inverse();
  Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
  for (auto side : {PreconditionerSide::Right, PreconditionerSide::Left})
  {
    GmresOptions opt;
    opt.side = side;
    SolveReport rep;
    const auto x = gmres(dense_op(M), b, dense_op(Minv), opt, rep);
    CHECK(rep.iterations == 1);
    CHECK((M * x - b).norm() < 1e-9 * b.norm());
  }
}

TEST_CASE("random initial guess is deterministic in the seed")
{
  const Index n = 40;
  const auto M = random_dense(n, 8, 2.0);
  Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
  GmresOptions opt;
  opt.seed = 42;
  SolveReport r1, r2, r3;
  gmres(dense_op(M), b, {}, opt, r1);
  gmres(dense_op(M), b, {}, opt, r2);
  CHECK(r1.residual_history == r2.residual_history);
  opt.seed = 43;
  gmres(dense_op(M), b, {}, opt, r3);
  CHECK(r3.residual_history[0] != r1.residual_history[0]);
  // zero guess starts from relative residual 1
  opt.random_initial_guess = false;
  gmres(dense_op(M), b, {}, opt, r3);
  CHECK(r3.residual_history[0] == doctest::Approx(1.0));
}

TEST_CASE("initial residual rule divides by r0")
{
  const Index n = 40;
  const auto M = random_dense(n, 12, 2.0);
  Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
  GmresOptions opt;
  opt.stopping = StoppingRule::InitialResidual;
  SolveReport rep;
  gmres(dense_op(M), b, {}, opt, rep);
  CHECK(rep.residual_history[0] == doctest::Approx(1.0));
  CHECK(rep.converged);
}

TEST_CASE("zero right-hand side")
{
  const auto M = random_dense(10, 2, 1.0);
  SolveReport rep;
  const auto x = gmres(dense_op(M), Eigen::VectorXcd::Zero(10), {}, {}, rep);
  CHECK(x.norm() == 0.0);
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
}

TEST_CASE("spectrum classification")
{
  const std::vector<Complex> eig = {{1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0 + 1e-12}, {3.5, 0.0},
                                    {0.5, 0.1}};
  const auto rep = classify_spectrum(eig);
  CHECK(rep.n_outside == 1);
  CHECK(rep.n_on_boundary == 2);
  CHECK(rep.n_inside == 2);
  CHECK(rep.n_outside + rep.n_on_boundary + rep.n_inside == Index(eig.size()));
  CHECK(rep.max_distance == doctest::Approx(2.5));
}

TEST_CASE("dense eigenvalues of a known matrix")
{
  // upper triangular: eigenvalues on the diagonal
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(4, 4);
  T.diagonal() << Complex(1, 2), Complex(-3, 0), Complex(0.5, -0.5), Complex(7, 1);
  T(0, 3) = 5.0;
  T(1, 2) = Complex(0, 2);
  auto eig = dense_eigenvalues(T);
  std::vector<Complex> expect = {T(0, 0), T(1, 1), T(2, 2), T(3, 3)};
  for (const auto &e : expect)
  {
    double best = 1e300;
    for (const auto &l : eig)
    {
      best = std::min(best, std::abs(l - e));
    }
    CHECK(best < 1e-12);
  }
}

TEST_CASE("preconditioned spectrum with the exact inverse is all ones")
{
  const Index n = 30;
  const auto M = random_dense(n, 21, 1.5);
  const Eigen::MatrixXcd Minv = M.inverse();
  const auto rep = preconditioned_spectrum(dense_op(M), dense_op(Minv), n);
  CHECK(rep.eigenvalues.size() == std::size_t(n));
  CHECK(rep.max_distance < 1e-10);
  CHECK(rep.n_inside == n);
  CHECK_THROWS_AS(preconditioned_spectrum(dense_op(M), dense_op(Minv), n, 10),
                  std::invalid_argument);
}

TEST_CASE("ritz values find an isolated outlier")
{
  // diag(1 + small, ..., 25): the outlier converges first
  const Index n = 200;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
  {
    D(i, i) = 1.0 + 0.3 * std::sin(double(i));
  }
  D(n - 1, n - 1) = 25.0;
  const auto rep = ritz_spectrum(dense_op(D), {}, n, 40, 1, 1e-8);
  CHECK_FALSE(rep.complete);
  REQUIRE(!rep.eigenvalues.empty());
  CHECK(rep.max_distance == doctest::Approx(24.0).epsilon(1e-8));
  CHECK(rep.n_outside == 1);

  // tiny problem: Arnoldi exhausts the space and every value is exact
  const auto small = ritz_spectrum(dense_op(D.topLeftCorner(6, 6).eval()), {}, 6, 10, 1);
  CHECK(small.complete);
  CHECK(small.eigenvalues.size() == 6);
}

TEST_CASE("eigenvalue csv")
{
  std::ostringstream os;
  write_eigenvalues_csv(os, {{1.5, -2.0}});
  CHECK(os.str() == "re,im\n1.5,-2\n");
}
