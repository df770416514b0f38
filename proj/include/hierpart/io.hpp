#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "hierpart/graph.hpp"
#include "hierpart/mesh.hpp"
#include "hierpart/nodes.hpp"

namespace hierpart::io {

// Mesh text: `dim num_nodes num_elements`, one coordinate line per node, then
// one line of 0-based node ids per element.
Mesh read_mesh(std::istream& in);
void write_mesh(std::ostream& out, const Mesh& mesh);

// Graph text: `nv ne [fmt]`, then one line per vertex listing its 1-based
// neighbors. fmt "1" adds a weight after each neighbor, "10" a leading vertex
// weight, "11" both. Lines starting with '%' are comments.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

// One 0-based part id per line. Without `num_parts` the count is max id + 1.
Partition read_partition(std::istream& in, std::optional<PartId> num_parts = std::nullopt);
void write_partition(std::ostream& out, const Partition& p);

// One 0-based owning rank per mesh node.
NodeOwnership read_ownership(std::istream& in, std::optional<PartId> num_ranks = std::nullopt);
void write_ownership(std::ostream& out, const NodeOwnership& ownership);

Mesh load_mesh(const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);
Partition load_partition(const std::filesystem::path& path, std::optional<PartId> num_parts = std::nullopt);
NodeOwnership load_ownership(const std::filesystem::path& path, std::optional<PartId> num_ranks = std::nullopt);

void save_mesh(const std::filesystem::path& path, const Mesh& mesh);
void save_graph(const std::filesystem::path& path, const Graph& g);
void save_partition(const std::filesystem::path& path, const Partition& p);
void save_ownership(const std::filesystem::path& path, const NodeOwnership& ownership);

}  // namespace hierpart::io
