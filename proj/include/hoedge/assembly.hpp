// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_ASSEMBLY_HPP
#define HOEDGE_ASSEMBLY_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "hoedge/interpolation.hpp"

namespace hoedge
{

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

//
// Material and frequency. Time dependence e^{+i omega t}, so
// eps_sigma = eps - i sigma / omega and gamma = omega sqrt(mu eps_sigma).
//
struct PhysicalParams
{
  double omega = 32e9;
  double epsilon = 8.85e-12;
  double mu = 1.26e-6;
  double sigma = 0.0;

  void validate() const;
  Complex epsilon_sigma() const;
  Complex gamma() const;
  double omega_tilde() const;  // omega sqrt(mu eps)
};

//
// Impedance data on Gamma_in and Gamma_out:
//   (curl E) x n + i eta n x (E x n) = g.
//
struct BoundaryData
{
  double eta = 0.0;
  VectorField g_in;
  VectorField g_out;
};

//
// Exact solutions used for verification.
//   plane wave (2d): E = (0, e^{-i gamma x}), eta = omega~.
//   TE_m0 mode (3d): E_y = -C (m pi / a) sin(m pi z / a) e^{-i beta x},
//     C = i omega mu / (omega~^2 - beta^2), eta = beta, g_out = 0.
// The TE field solves the problem only when sigma = 0; with losses it is
// still used to build the incoming data.
//
class ReferenceSolution
{
public:
  enum class Kind
  {
    PlaneWave2d,
    TransverseElectric3d
  };

  static ReferenceSolution plane_wave(const PhysicalParams &params);
  // Mode (m, 0) of a guide of height a along z; beta from the dispersion
  // relation (m pi / a)^2 = omega~^2 - beta^2.
  static ReferenceSolution te_mode(const PhysicalParams &params, double a, int m = 1);

  Kind kind() const { return kind_; }
  const PhysicalParams &params() const { return params_; }
  double beta() const { return beta_; }
  Complex amplitude() const { return amplitude_; }

  CVec3 field(const Vec3 &x) const;
  BoundaryData boundary_data() const;
  VectorField as_field() const;

private:
  Kind kind_ = Kind::PlaneWave2d;
  PhysicalParams params_;
  double a_ = 1.0;
  int m_ = 1;
  double beta_ = 0.0;
  Complex amplitude_{};
};

// Mesh size rules: h^2 omega~^3 = 2 in 2d, h^2 beta^3 = 1 in 3d. In 3d
// params.omega is the frequency omega_beta that fixes beta = omega_beta
// sqrt(mu eps).
double mesh_size_rule(int dim, const PhysicalParams &params);

// 3d setup: beta from omega_beta, then omega~ = sqrt(beta^2 + (pi/a)^2)
// and the actual omega = omega~ / sqrt(mu eps).
struct TeSetup
{
  double beta = 0.0;
  double omega_tilde = 0.0;
  double omega = 0.0;
  double h = 0.0;
};
TeSetup te10_setup(double omega_beta, double a, const PhysicalParams &material);

//
// Facet carrying the tangential term i eta int (E x n).(v x n).
//
struct ImpedanceFacet
{
  std::array<Index, 3> nodes{-1, -1, -1};
  Index simplex = -1;  // simplex on the inner side
  double eta = 0.0;
};

// In/Out boundary facets of the mesh with the given eta.
std::vector<ImpedanceFacet> physical_impedance_facets(const Mesh &mesh, double eta);

//
// Bilinear form K - gamma^2 M + i B restricted to the given simplices and
// impedance facets. numbering maps a global dof to its row (or -1 to drop
// it); n is the number of rows.
//
SparseMatrix assemble_matrix(const DofMap &dofs, Complex gamma2, std::span<const Index> simplices,
                             std::span<const ImpedanceFacet> facets,
                             std::span<const Index> numbering, Index n);

// Right-hand side int_{Gamma_in} g_in . v + int_{Gamma_out} g_out . v using
// the tangential part of g.
Eigen::VectorXcd assemble_rhs(const DofMap &dofs, const BoundaryData &data,
                              std::span<const Index> numbering, Index n);

//
// Discrete system on the free dofs; wall dofs are eliminated with value 0.
//
struct ComplexSparseSystem
{
  SparseMatrix A;
  Eigen::VectorXcd b;
};

ComplexSparseSystem assemble(const DofMap &dofs, const PhysicalParams &params,
                             const BoundaryData &data);

// sqrt(int |E_h - E|^2 / int |E|^2), E_h given by its full dof vector.
double l2_relative_error(const DofMap &dofs, const Eigen::VectorXcd &coeffs,
                         const VectorField &exact);

// "row col re im" lines, 0-based, full precision.
void write_triplets(std::ostream &os, const SparseMatrix &A);

}  // namespace hoedge

#endif  // HOEDGE_ASSEMBLY_HPP
