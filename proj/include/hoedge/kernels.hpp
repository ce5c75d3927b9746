// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_KERNELS_HPP
#define HOEDGE_KERNELS_HPP

#include <optional>

#include "hoedge/geometry.hpp"

//
// Complex vector kernels used by the Krylov solver. Every kernel has a
// portable scalar reference and an AVX2/FMA variant; the variant is chosen
// at run time from the CPU features and can be forced for testing.
//
namespace hoedge::kernels
{

enum class Isa
{
  Scalar,
  Avx2
};

const char *to_string(Isa isa);
bool avx2_available();
Isa active_isa();
// Overrides the detected ISA; std::nullopt restores detection. Forcing
// Avx2 on a machine without it throws.
void force_isa(std::optional<Isa> isa);

// Compressed sparse rows with 32-bit column indices.
struct CsrView
{
  Index rows = 0;
  const int *row_ptr = nullptr;
  const int *col = nullptr;
  const Complex *val = nullptr;
};

// sum conj(x_i) y_i
Complex dotc(Index n, const Complex *x, const Complex *y);
// y += a x
void axpy(Index n, Complex a, const Complex *x, Complex *y);
// sqrt(sum |x_i|^2)
double nrm2(Index n, const Complex *x);
// y = A x
void csr_matvec(const CsrView &A, const Complex *x, Complex *y);

namespace scalar
{
Complex dotc(Index n, const Complex *x, const Complex *y);
void axpy(Index n, Complex a, const Complex *x, Complex *y);
double nrm2(Index n, const Complex *x);
void csr_matvec(const CsrView &A, const Complex *x, Complex *y);
}  // namespace scalar

namespace avx2
{
Complex dotc(Index n, const Complex *x, const Complex *y);
void axpy(Index n, Complex a, const Complex *x, Complex *y);
double nrm2(Index n, const Complex *x);
void csr_matvec(const CsrView &A, const Complex *x, Complex *y);
}  // namespace avx2

}  // namespace hoedge::kernels

#endif  // HOEDGE_KERNELS_HPP
