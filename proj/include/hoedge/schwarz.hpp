// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_SCHWARZ_HPP
#define HOEDGE_SCHWARZ_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hoedge/assembly.hpp"

namespace hoedge
{

//
// Stripwise decomposition along x. The mesh is cut into columns of cells;
// subdomain s owns a contiguous range of core columns and is extended by
// overlap layers across each interior interface. With overlap 1 only the
// left neighbour is extended, otherwise the layers are split between the
// two sides (the left side takes the extra one when the count is odd).
//
struct Subdomain
{
  Index first_column = 0;  // inclusive
  Index last_column = 0;   // exclusive
  std::vector<Index> simplices;
  std::vector<Index> dofs;  // free dof indices whose support lies in the strip
};

struct Decomposition
{
  int overlap = 0;
  Index n_columns = 0;
  std::vector<Index> interfaces;  // core boundaries, in column units
  std::vector<Subdomain> subdomains;
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(subdomains.size()); }
};

// Column index of every node along x (the mesh must be a tensor grid in x).
std::vector<Index> node_columns(const Mesh &mesh, Index *n_columns = nullptr);

Decomposition decompose(const DofMap &dofs, int n_sub, int overlap);

// Single subdomain covering the whole mesh; only useful for tests.
Decomposition whole_domain(const DofMap &dofs);

// One line per simplex: the subdomains containing it.
void write_decomposition(std::ostream &os, const Decomposition &dec, Index n_simplices);

//
// Discrete partition of unity: weight of every dof of every subdomain,
// exact and rounded. chi_s is piecewise linear in x, evaluated at the
// barycenter of the dof support and renormalized per dof so that
// sum_s R_s^T D_s R_s = I holds exactly in rational arithmetic.
//
struct PartitionOfUnity
{
  std::vector<std::vector<Rational>> exact;
  std::vector<std::vector<double>> weights;
};

PartitionOfUnity build_partition_of_unity(const Decomposition &dec, const DofMap &dofs);

// Checks sum_s R_s^T D_s R_s = I exactly; returns the number of dofs
// where it fails.
Index partition_of_unity_defect(const PartitionOfUnity &pou, const Decomposition &dec,
                                Index n_free);

enum class SchwarzVariant
{
  Oras,
  Oas
};

//
// Local impedance problems and the one-level preconditioners
//   M^-1_ORAS = sum R_s^T D_s A_s^-1 R_s,   M^-1_OAS = sum R_s^T A_s^-1 R_s.
// Interfaces between subdomains carry i omega~ int (E x n).(v x n); the
// physical In/Out facets keep their own eta.
//
class SchwarzPreconditioner
{
public:
  SchwarzPreconditioner(const DofMap &dofs, const Decomposition &dec,
                        const PhysicalParams &params, double eta_physical);
  ~SchwarzPreconditioner();
  SchwarzPreconditioner(SchwarzPreconditioner &&) noexcept;
  SchwarzPreconditioner &operator=(SchwarzPreconditioner &&) noexcept;

  Index size() const { return n_; }
  int n_subdomains() const;
  const PartitionOfUnity &partition_of_unity() const { return pou_; }
  const SparseMatrix &local_matrix(int s) const;
  // Impedance facets of subdomain s that lie on interfaces.
  const std::vector<ImpedanceFacet> &interface_facets(int s) const;

  Eigen::VectorXcd apply(SchwarzVariant variant, const Eigen::VectorXcd &x) const;
  Eigen::VectorXcd apply_oras(const Eigen::VectorXcd &x) const
  {
    return apply(SchwarzVariant::Oras, x);
  }
  Eigen::VectorXcd apply_oas(const Eigen::VectorXcd &x) const
  {
    return apply(SchwarzVariant::Oas, x);
  }

private:
  struct Local;
  Index n_ = 0;
  PartitionOfUnity pou_;
  std::vector<std::unique_ptr<Local>> locals_;
};

const char *to_string(SchwarzVariant v);

}  // namespace hoedge

#endif  // HOEDGE_SCHWARZ_HPP
