#include "hierpart/mesh.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "hierpart/errors.hpp"

namespace hierpart {

Mesh Mesh::create(int dim, std::vector<double> coords, std::vector<NodeId> connectivity) {
  if (dim != 2 && dim != 3) throw InvalidArgument("mesh: dimension must be 2 or 3");
  Mesh m;
  m.dim_ = dim;
  const auto npe = static_cast<std::size_t>(m.nodes_per_element());
  if (coords.size() % static_cast<std::size_t>(dim) != 0)
    throw InvalidArgument("mesh: coordinate array is not a multiple of the dimension");
  if (connectivity.size() % npe != 0)
    throw InvalidArgument("mesh: connectivity must list exactly " + std::to_string(npe) +
                          " nodes per element");
  const auto nn = static_cast<NodeId>(coords.size() / static_cast<std::size_t>(dim));
  for (std::size_t e = 0; e < connectivity.size() / npe; ++e) {
    std::array<NodeId, 8> seen{};
    for (std::size_t k = 0; k < npe; ++k) {
      const NodeId n = connectivity[e * npe + k];
      if (n < 0 || n >= nn)
        throw InvalidArgument("mesh: element " + std::to_string(e) + " references node " +
                              std::to_string(n) + " outside [0, " + std::to_string(nn) + ")");
      seen[k] = n;
    }
    std::sort(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(npe));
    if (std::adjacent_find(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(npe)) !=
        seen.begin() + static_cast<std::ptrdiff_t>(npe))
      throw InvalidArgument("mesh: element " + std::to_string(e) + " repeats a node id");
  }
  m.coords_ = std::move(coords);
  m.connectivity_ = std::move(connectivity);
  return m;
}

Mesh generate_structured_quad(std::int32_t nx, std::int32_t ny) {
  if (nx < 1 || ny < 1) throw InvalidArgument("generate_structured_quad: dimensions must be >= 1");
  const NodeId row = nx + 1;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(row) * static_cast<std::size_t>(ny + 1) * 2);
  for (std::int32_t j = 0; j <= ny; ++j)
    for (std::int32_t i = 0; i <= nx; ++i) {
      coords.push_back(i);
      coords.push_back(j);
    }
  std::vector<NodeId> conn;
  conn.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * 4);
  for (std::int32_t j = 0; j < ny; ++j)
    for (std::int32_t i = 0; i < nx; ++i) {
      const NodeId base = j * row + i;
      conn.insert(conn.end(), {base, base + 1, base + row + 1, base + row});
    }
  return Mesh::create(2, std::move(coords), std::move(conn));
}

Mesh generate_structured_hex(std::int32_t nx, std::int32_t ny, std::int32_t nz) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw InvalidArgument("generate_structured_hex: dimensions must be >= 1");
  const NodeId row = nx + 1;
  const NodeId layer = row * (ny + 1);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(layer) * static_cast<std::size_t>(nz + 1) * 3);
  for (std::int32_t k = 0; k <= nz; ++k)
    for (std::int32_t j = 0; j <= ny; ++j)
      for (std::int32_t i = 0; i <= nx; ++i) {
        coords.push_back(i);
        coords.push_back(j);
        coords.push_back(k);
      }
  std::vector<NodeId> conn;
  conn.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz) * 8);
  for (std::int32_t k = 0; k < nz; ++k)
    for (std::int32_t j = 0; j < ny; ++j)
      for (std::int32_t i = 0; i < nx; ++i) {
        const NodeId b = k * layer + j * row + i;
        const NodeId t = b + layer;
        conn.insert(conn.end(), {b, b + 1, b + row + 1, b + row, t, t + 1, t + row + 1, t + row});
      }
  return Mesh::create(3, std::move(coords), std::move(conn));
}

std::span<const std::vector<int>> element_sides(int dim) {
  static const std::vector<std::vector<int>> quad{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  static const std::vector<std::vector<int>> hex{{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                                 {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  if (dim == 2) return quad;
  if (dim == 3) return hex;
  throw InvalidArgument("element_sides: dimension must be 2 or 3");
}

NodeElements node_elements(const Mesh& mesh) {
  NodeElements ne;
  ne.offsets.assign(static_cast<std::size_t>(mesh.num_nodes()) + 1, 0);
  for (NodeId n : mesh.connectivity()) ++ne.offsets[n + 1];
  std::partial_sum(ne.offsets.begin(), ne.offsets.end(), ne.offsets.begin());
  ne.elements.resize(mesh.connectivity().size());
  std::vector<std::int64_t> fill(ne.offsets.begin(), ne.offsets.end() - 1);
  // Elements visited in id order, so each node's list is ascending.
  for (ElementId e = 0; e < mesh.num_elements(); ++e)
    for (NodeId n : mesh.element(e)) ne.elements[fill[n]++] = e;
  return ne;
}

Graph dual_graph(const Mesh& mesh) {
  struct SideKey {
    std::array<NodeId, 4> nodes{-1, -1, -1, -1};
    ElementId element;
  };
  const auto sides = element_sides(mesh.dim());
  std::vector<SideKey> keys;
  keys.reserve(static_cast<std::size_t>(mesh.num_elements()) * sides.size());
  for (ElementId e = 0; e < mesh.num_elements(); ++e) {
    auto nodes = mesh.element(e);
    for (const auto& side : sides) {
      SideKey key;
      key.element = e;
      for (std::size_t k = 0; k < side.size(); ++k) key.nodes[k] = nodes[side[k]];
      std::sort(key.nodes.begin(), key.nodes.begin() + static_cast<std::ptrdiff_t>(side.size()));
      keys.push_back(key);
    }
  }
  std::sort(keys.begin(), keys.end(), [](const SideKey& a, const SideKey& b) {
    return a.nodes != b.nodes ? a.nodes < b.nodes : a.element < b.element;
  });

  std::vector<WeightedEdge> edges;
  for (std::size_t lo = 0; lo < keys.size();) {
    std::size_t hi = lo + 1;
    while (hi < keys.size() && keys[hi].nodes == keys[lo].nodes) ++hi;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = a + 1; b < hi; ++b)
        if (keys[a].element != keys[b].element) edges.push_back({keys[a].element, keys[b].element, 1});
    lo = hi;
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const WeightedEdge& a, const WeightedEdge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  return build_graph(edges, mesh.num_elements());
}

void check_element_partition(const Mesh& mesh, const Partition& elem_partition) {
  if (elem_partition.size() != mesh.num_elements())
    throw InvalidArgument("element partition has " + std::to_string(elem_partition.size()) +
                          " entries but mesh has " + std::to_string(mesh.num_elements()) + " elements");
}

InterfaceNodes interface_node_sets(const Mesh& mesh, const Partition& elem_partition) {
  check_element_partition(mesh, elem_partition);
  const NodeElements ne = node_elements(mesh);
  InterfaceNodes out;
  std::vector<PartId> ranks;
  for (NodeId n = 0; n < mesh.num_nodes(); ++n) {
    ranks.clear();
    for (ElementId e : ne.of(n)) ranks.push_back(elem_partition[e]);
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    if (ranks.size() == 2)
      out.pairs[{ranks[0], ranks[1]}].push_back(n);
    else if (ranks.size() > 2)
      out.multi_rank.push_back(n);
  }
  return out;
}

}  // namespace hierpart
