#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hierpart/graph.hpp"

namespace hierpart {

using NodeId = std::int32_t;
using ElementId = std::int32_t;

/// Quad (2D) or hex (3D) element mesh. Connectivity is stored flat with a
/// fixed number of nodes per element.
class Mesh {
 public:
  Mesh() = default;

  /// Validates dimension, connectivity length, node id range and per-element
  /// distinctness. `coords` holds `dim` values per node.
  static Mesh create(int dim, std::vector<double> coords, std::vector<NodeId> connectivity);

  int dim() const { return dim_; }
  int nodes_per_element() const { return dim_ == 2 ? 4 : 8; }
  NodeId num_nodes() const { return static_cast<NodeId>(coords_.size() / static_cast<std::size_t>(dim_)); }
  ElementId num_elements() const {
    return static_cast<ElementId>(connectivity_.size() / static_cast<std::size_t>(nodes_per_element()));
  }

  std::span<const NodeId> element(ElementId e) const {
    const auto n = static_cast<std::size_t>(nodes_per_element());
    return {connectivity_.data() + static_cast<std::size_t>(e) * n, n};
  }
  std::span<const double> coords(NodeId n) const {
    return {coords_.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::span<const NodeId> connectivity() const { return connectivity_; }
  std::span<const double> all_coords() const { return coords_; }

  friend bool operator==(const Mesh&, const Mesh&) = default;

 private:
  int dim_ = 2;
  std::vector<double> coords_;
  std::vector<NodeId> connectivity_;
};

/// nx*ny quads; nodes row-major with x fastest. Element (i,j) has nodes
/// (j(nx+1)+i, j(nx+1)+i+1, (j+1)(nx+1)+i+1, (j+1)(nx+1)+i).
Mesh generate_structured_quad(std::int32_t nx, std::int32_t ny);

/// nx*ny*nz hexes; nodes numbered x fastest, then y, then z. Each element
/// lists its bottom quad then its top quad in the quad ordering above.
Mesh generate_structured_hex(std::int32_t nx, std::int32_t ny, std::int32_t nz);

/// Local node indices of each element side: 4 edges of a quad (2 nodes
/// each) or 6 faces of a hex (4 nodes each, cyclic order).
std::span<const std::vector<int>> element_sides(int dim);

/// Node-to-element incidence in CSR form.
struct NodeElements {
  std::vector<std::int64_t> offsets;
  std::vector<ElementId> elements;

  std::span<const ElementId> of(NodeId n) const {
    return {elements.data() + offsets[n], static_cast<std::size_t>(offsets[n + 1] - offsets[n])};
  }
};

NodeElements node_elements(const Mesh& mesh);

/// Element dual graph: one vertex per element, an edge per shared full side,
/// unit weights.
Graph dual_graph(const Mesh& mesh);

using RankPair = std::pair<PartId, PartId>;

struct InterfaceNodes {
  /// (a, b) with a < b -> nodes touching exactly parts a and b, ascending.
  std::map<RankPair, std::vector<NodeId>> pairs;
  /// Nodes touching three or more parts, ascending.
  std::vector<NodeId> multi_rank;
};

InterfaceNodes interface_node_sets(const Mesh& mesh, const Partition& elem_partition);

/// Throws InvalidArgument unless the partition has one entry per element.
void check_element_partition(const Mesh& mesh, const Partition& elem_partition);

}  // namespace hierpart
