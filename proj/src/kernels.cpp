// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <stdexcept>

#include "hoedge/kernels.hpp"

namespace hoedge::kernels
{

namespace
{

std::atomic<int> forced{-1};

}  // namespace

const char *to_string(Isa isa)
{
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool avx2_available()
{
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa()
{
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0)
  {
    return static_cast<Isa>(f);
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

void force_isa(std::optional<Isa> isa)
{
  if (isa && *isa == Isa::Avx2 && !avx2_available())
  {
    throw std::runtime_error("force_isa: AVX2/FMA not supported by this CPU");
  }
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

Complex dotc(Index n, const Complex *x, const Complex *y)
{
  return active_isa() == Isa::Avx2 ? avx2::dotc(n, x, y) : scalar::dotc(n, x, y);
}

void axpy(Index n, Complex a, const Complex *x, Complex *y)
{
  active_isa() == Isa::Avx2 ? avx2::axpy(n, a, x, y) : scalar::axpy(n, a, x, y);
}

double nrm2(Index n, const Complex *x)
{
  return active_isa() == Isa::Avx2 ? avx2::nrm2(n, x) : scalar::nrm2(n, x);
}

void csr_matvec(const CsrView &A, const Complex *x, Complex *y)
{
  active_isa() == Isa::Avx2 ? avx2::csr_matvec(A, x, y) : scalar::csr_matvec(A, x, y);
}

}  // namespace hoedge::kernels
