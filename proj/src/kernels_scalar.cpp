// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "hoedge/kernels.hpp"

namespace hoedge::kernels::scalar
{

Complex dotc(Index n, const Complex *x, const Complex *y)
{
  double re = 0.0, im = 0.0;
  for (Index i = 0; i < n; ++i)
  {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy(Index n, Complex a, const Complex *x, Complex *y)
{
  for (Index i = 0; i < n; ++i)
  {
    y[i] = Complex(y[i].real() + a.real() * x[i].real() - a.imag() * x[i].imag(),
                   y[i].imag() + a.real() * x[i].imag() + a.imag() * x[i].real());
  }
}

double nrm2(Index n, const Complex *x)
{
  double s = 0.0;
  for (Index i = 0; i < n; ++i)
  {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return std::sqrt(s);
}

void csr_matvec(const CsrView &A, const Complex *x, Complex *y)
{
  for (Index r = 0; r < A.rows; ++r)
  {
    double re = 0.0, im = 0.0;
    for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
    {
      const Complex v = A.val[k];
      const Complex u = x[A.col[k]];
      re += v.real() * u.real() - v.imag() * u.imag();
      im += v.real() * u.imag() + v.imag() * u.real();
    }
    y[r] = {re, im};
  }
}

}  // namespace hoedge::kernels::scalar
