// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_GEOMETRY_HPP
#define HOEDGE_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace hoedge
{

using Index = std::int64_t;
using Complex = std::complex<double>;

// Points and vectors are always stored with three components; in 2d the
// z component is zero and curls only have a z component.
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

inline constexpr Vec3 operator+(const Vec3 &a, const Vec3 &b)
{
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b)
{
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline constexpr Vec3 operator-(const Vec3 &a)
{
  return {-a[0], -a[1], -a[2]};
}

inline constexpr Vec3 operator*(double s, const Vec3 &a)
{
  return {s * a[0], s * a[1], s * a[2]};
}

inline constexpr double dot(const Vec3 &a, const Vec3 &b)
{
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
{
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3 &a)
{
  return std::sqrt(dot(a, a));
}

inline constexpr CVec3 operator+(const CVec3 &a, const CVec3 &b)
{
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline constexpr CVec3 operator-(const CVec3 &a, const CVec3 &b)
{
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline constexpr CVec3 operator*(Complex s, const CVec3 &a)
{
  return {s * a[0], s * a[1], s * a[2]};
}

inline CVec3 to_complex(const Vec3 &a)
{
  return {a[0], a[1], a[2]};
}

inline double norm2(const CVec3 &a)
{
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

}  // namespace hoedge

#endif  // HOEDGE_GEOMETRY_HPP
