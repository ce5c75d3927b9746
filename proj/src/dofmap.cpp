// Copyright The hoedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hoedge/dofmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoedge
{

DofMap::DofMap(const Mesh &mesh, int degree)
    : mesh_(&mesh),
      degree_(degree),
      element_(&local_element(mesh.dim(), degree)),
      local_size_(element_->size()),
      per_edge_(dofs_per_edge(degree)),
      per_face_(dofs_per_face(degree)),
      per_volume_(mesh.dim() == 3 ? dofs_per_volume(degree) : 0)
{
  const int d = mesh.dim();
  const Index nt = mesh.n_simplices();
  const Index n_face_entities = d == 3 ? mesh.n_faces() : nt;
  edge_block_ = mesh.n_edges() * per_edge_;
  face_block_ = n_face_entities * per_face_;
  n_dofs_ = edge_block_ + face_block_ + (d == 3 ? nt * per_volume_ : 0);

  const int n_local_edges = static_cast<int>(local_edges(d).size());
  dofs_.resize(static_cast<std::size_t>(nt * local_size_));
  for (Index t = 0; t < nt; ++t)
  {
    Index *out = dofs_.data() + t * local_size_;
    int k = 0;
    const auto edges = mesh.simplex_edges(t);
    for (int le = 0; le < n_local_edges; ++le)
    {
      for (int m = 0; m < per_edge_; ++m)
      {
        out[k++] = edges[le] * per_edge_ + m;
      }
    }
    if (d == 3)
    {
      const auto faces = mesh.simplex_faces(t);
      for (int lf = 0; lf < 4; ++lf)
      {
        for (int m = 0; m < per_face_; ++m)
        {
          out[k++] = edge_block_ + faces[lf] * per_face_ + m;
        }
      }
      for (int m = 0; m < per_volume_; ++m)
      {
        out[k++] = edge_block_ + face_block_ + t * per_volume_ + m;
      }
    }
    else
    {
      for (int m = 0; m < per_face_; ++m)
      {
        out[k++] = edge_block_ + t * per_face_ + m;
      }
    }
    if (k != local_size_)
    {
      throw std::logic_error("DofMap: local dof count mismatch");
    }
  }

  // Wall entities: every edge of a wall facet, and in 3d the facet itself.
  std::vector<char> wall_edge(mesh.n_edges(), 0);
  std::vector<char> wall_face(d == 3 ? mesh.n_faces() : 0, 0);
  for (const auto &f : mesh.boundary_facets())
  {
    if (f.label != BoundaryLabel::Wall)
    {
      continue;
    }
    for (int a = 0; a < d; ++a)
    {
      for (int b = a + 1; b < d; ++b)
      {
        wall_edge[*mesh.find_edge(f.nodes[a], f.nodes[b])] = 1;
      }
    }
    if (d == 3)
    {
      wall_face[*mesh.find_face(f.nodes[0], f.nodes[1], f.nodes[2])] = 1;
    }
  }

  full_to_free_.assign(static_cast<std::size_t>(n_dofs_), 0);
  for (Index e = 0; e < mesh.n_edges(); ++e)
  {
    if (wall_edge[e])
    {
      std::fill_n(full_to_free_.begin() + e * per_edge_, per_edge_, Index{-1});
    }
  }
  for (Index f = 0; f < static_cast<Index>(wall_face.size()); ++f)
  {
    if (wall_face[f])
    {
      std::fill_n(full_to_free_.begin() + edge_block_ + f * per_face_, per_face_, Index{-1});
    }
  }
  for (Index g = 0; g < n_dofs_; ++g)
  {
    if (full_to_free_[g] >= 0)
    {
      full_to_free_[g] = static_cast<Index>(free_to_full_.size());
      free_to_full_.push_back(g);
    }
  }
}

EntityKind DofMap::support_kind(Index g) const
{
  if (g < edge_block_)
  {
    return EntityKind::Edge;
  }
  if (g < edge_block_ + face_block_)
  {
    return dim() == 3 ? EntityKind::Face : EntityKind::Volume;
  }
  return EntityKind::Volume;
}

std::vector<Index> DofMap::support_nodes(Index g) const
{
  if (g < edge_block_)
  {
    const auto &e = mesh_->edge(g / per_edge_);
    return {e[0], e[1]};
  }
  if (g < edge_block_ + face_block_)
  {
    const Index f = (g - edge_block_) / per_face_;
    if (dim() == 3)
    {
      const auto &nodes = mesh_->face(f);
      return {nodes.begin(), nodes.end()};
    }
    const auto nodes = mesh_->simplex(f);
    return {nodes.begin(), nodes.end()};
  }
  const Index t = (g - edge_block_ - face_block_) / per_volume_;
  const auto nodes = mesh_->simplex(t);
  return {nodes.begin(), nodes.end()};
}

Vec3 DofMap::support_barycenter(Index g) const
{
  const auto nodes = support_nodes(g);
  Vec3 c{};
  for (Index n : nodes)
  {
    c = c + mesh_->node(n);
  }
  return (1.0 / static_cast<double>(nodes.size())) * c;
}

ElementBasis DofMap::basis(Index t) const
{
  return ElementBasis(*element_, BarycentricFrame::of(*mesh_, t), mesh_->simplex(t));
}

Eigen::VectorXcd DofMap::expand(const Eigen::VectorXcd &free_values) const
{
  if (free_values.size() != n_free())
  {
    throw std::invalid_argument("DofMap::expand: size mismatch");
  }
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n_dofs_);
  for (Index f = 0; f < n_free(); ++f)
  {
    full[free_to_full_[f]] = free_values[f];
  }
  return full;
}

Eigen::VectorXcd DofMap::restrict_to_free(const Eigen::VectorXcd &full_values) const
{
  if (full_values.size() != n_dofs_)
  {
    throw std::invalid_argument("DofMap::restrict_to_free: size mismatch");
  }
  Eigen::VectorXcd out(n_free());
  for (Index f = 0; f < n_free(); ++f)
  {
    out[f] = full_values[free_to_full_[f]];
  }
  return out;
}

}  // namespace hoedge
