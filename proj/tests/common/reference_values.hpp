// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_TESTS_REFERENCE_VALUES_HPP
#define HOEDGE_TESTS_REFERENCE_VALUES_HPP

#include <array>

namespace hoedge::testing
{

// Inverse of the generalized Vandermonde matrix, d = 3, r = 2, as printed.
inline constexpr std::array<std::array<int, 20>, 20> kPrintedVinv = {{
    { 4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    {-2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0, -4, -2,  2, -2,  2,  4,  8, -4,  0,  0,  0,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  2, -2, -4, -2, -4, -2, -4,  8,  0,  0,  0,  0,  0,  0},
    { 0,  0, -4, -2,  2, -2,  0,  0,  0,  0,  2,  4,  0,  0,  8, -4,  0,  0,  0,  0},
    { 0,  0,  2, -2, -4, -2,  0,  0,  0,  0, -4, -2,  0,  0, -4,  8,  0,  0,  0,  0},
    {-4, -2,  0,  0,  2, -2,  0,  0,  2,  4,  0,  0,  0,  0,  0,  0,  8, -4,  0,  0},
    { 2, -2,  0,  0, -4, -2,  0,  0, -4, -2,  0,  0,  0,  0,  0,  0, -4,  8,  0,  0},
    {-4, -2,  2, -2,  0,  0,  2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  8, -4},
    { 2, -2, -4, -2,  0,  0, -4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -4,  8},
}};

inline constexpr std::array<int, 4> kPrintedP4 = {0, 3, 1, 2};
inline constexpr std::array<int, 20> kPrintedP20 = {4, 5, 0, 1, 2, 3, 8, 9, 10, 11,
                                                   6, 7, 12, 13, 18, 19, 14, 15, 16, 17};

}  // namespace hoedge::testing

#endif  // HOEDGE_TESTS_REFERENCE_VALUES_HPP
