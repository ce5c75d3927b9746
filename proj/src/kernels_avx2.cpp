// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <immintrin.h>

#include "hoedge/kernels.hpp"

// Complex numbers are stored as interleaved (re, im) doubles, so one 256-bit
// register holds two of them.

#define HOEDGE_AVX2 __attribute__((target("avx2,fma")))

namespace hoedge::kernels::avx2
{

namespace
{

HOEDGE_AVX2 inline double hsum(__m256d v)
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (a * b) for two complex pairs
HOEDGE_AVX2 inline __m256d cmul(__m256d a, __m256d b)
{
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

}  // namespace

HOEDGE_AVX2 Complex dotc(Index n, const Complex *x, const Complex *y)
{
  const double *px = reinterpret_cast<const double *>(x);
  const double *py = reinterpret_cast<const double *>(y);
  __m256d re = _mm256_setzero_pd();  // xr yr, xi yi
  __m256d im = _mm256_setzero_pd();  // xr yi, xi yr
  Index i = 0;
  for (; i + 2 <= n; i += 2)
  {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    re = _mm256_fmadd_pd(vx, vy, re);
    im = _mm256_fmadd_pd(vx, _mm256_permute_pd(vy, 0x5), im);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, im);
  double sre = hsum(re);
  double sim = (t[0] - t[1]) + (t[2] - t[3]);
  for (; i < n; ++i)
  {
    sre += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    sim += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sre, sim};
}

HOEDGE_AVX2 void axpy(Index n, Complex a, const Complex *x, Complex *y)
{
  const double *px = reinterpret_cast<const double *>(x);
  double *py = reinterpret_cast<double *>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  Index i = 0;
  for (; i + 2 <= n; i += 2)
  {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d ax = _mm256_fmaddsub_pd(ar, vx, _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0x5)));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), ax));
  }
  for (; i < n; ++i)
  {
    y[i] = Complex(y[i].real() + a.real() * x[i].real() - a.imag() * x[i].imag(),
                   y[i].imag() + a.real() * x[i].imag() + a.imag() * x[i].real());
  }
}

HOEDGE_AVX2 double nrm2(Index n, const Complex *x)
{
  const double *px = reinterpret_cast<const double *>(x);
  __m256d acc = _mm256_setzero_pd();
  Index i = 0;
  for (; i + 2 <= n; i += 2)
  {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i)
  {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return std::sqrt(s);
}

HOEDGE_AVX2 void csr_matvec(const CsrView &A, const Complex *x, Complex *y)
{
  const double *pv = reinterpret_cast<const double *>(A.val);
  const double *px = reinterpret_cast<const double *>(x);
  for (Index r = 0; r < A.rows; ++r)
  {
    __m256d acc = _mm256_setzero_pd();
    int k = A.row_ptr[r];
    const int end = A.row_ptr[r + 1];
    for (; k + 2 <= end; k += 2)
    {
      const __m256d v = _mm256_loadu_pd(pv + 2 * k);
      const __m256d u = _mm256_set_m128d(_mm_loadu_pd(px + 2 * A.col[k + 1]),
                                         _mm_loadu_pd(px + 2 * A.col[k]));
      acc = _mm256_add_pd(acc, cmul(v, u));
    }
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double re = _mm_cvtsd_f64(s);
    double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; k < end; ++k)
    {
      const Complex v = A.val[k];
      const Complex u = x[A.col[k]];
      re += v.real() * u.real() - v.imag() * u.imag();
      im += v.real() * u.imag() + v.imag() * u.real();
    }
    y[r] = {re, im};
  }
}

}  // namespace hoedge::kernels::avx2
