// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HOEDGE_DOFMAP_HPP
#define HOEDGE_DOFMAP_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "hoedge/edge_elements.hpp"
#include "hoedge/mesh.hpp"

namespace hoedge
{

//
// Global numbering of edge, face and volume dofs. Global dofs are laid out
// entity by entity: all edge dofs (degree per edge), then face dofs (3d
// faces, or the triangles themselves in 2d), then volume dofs (3d). Dofs of
// one entity keep the order given by increasing global node numbers, so
// every simplex sharing the entity sees the same dofs with sign +1.
//
// Dofs whose support lies on a metallic wall are constrained and excluded
// from the "free" numbering used by the linear systems.
//
class DofMap
{
public:
  DofMap(const Mesh &mesh, int degree);

  const Mesh &mesh() const { return *mesh_; }
  int dim() const { return mesh_->dim(); }
  int degree() const { return degree_; }
  const LocalElement &element() const { return *element_; }

  Index n_dofs() const { return n_dofs_; }
  Index n_free() const { return static_cast<Index>(free_to_full_.size()); }
  Index n_constrained() const { return n_dofs_ - n_free(); }

  // Global dof ids of simplex t in local storage order.
  std::span<const Index> simplex_dofs(Index t) const
  {
    return {dofs_.data() + t * local_size_, static_cast<std::size_t>(local_size_)};
  }

  // Orientation sign of every local dof; always +1 with the canonical
  // low-to-high construction.
  int sign(Index /*t*/, int /*local*/) const { return 1; }

  bool constrained(Index g) const { return full_to_free_[g] < 0; }
  Index free_index(Index g) const { return full_to_free_[g]; }
  Index full_index(Index f) const { return free_to_full_[f]; }
  // free_index for every global dof, -1 on constrained ones.
  std::span<const Index> free_numbering() const { return full_to_free_; }

  EntityKind support_kind(Index g) const;
  // Global nodes of the support entity of dof g (2, 3 or 4 of them).
  std::vector<Index> support_nodes(Index g) const;
  Vec3 support_barycenter(Index g) const;

  ElementBasis basis(Index t) const;

  // Free-dof vector <-> full vector with zeros on constrained dofs.
  Eigen::VectorXcd expand(const Eigen::VectorXcd &free_values) const;
  Eigen::VectorXcd restrict_to_free(const Eigen::VectorXcd &full_values) const;

private:
  const Mesh *mesh_;
  int degree_;
  const LocalElement *element_;
  int local_size_;
  Index n_dofs_ = 0;
  Index edge_block_ = 0, face_block_ = 0;
  int per_edge_, per_face_, per_volume_;
  std::vector<Index> dofs_;
  std::vector<Index> full_to_free_;
  std::vector<Index> free_to_full_;
};

}  // namespace hoedge

#endif  // HOEDGE_DOFMAP_HPP
