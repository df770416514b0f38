#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hierpart/graph.hpp"
#include "hierpart/mesh.hpp"
#include "hierpart/nodes.hpp"

namespace hierpart {

/// One row per rank: element count, owned nodes and boundary edges of the
/// element dual graph.
struct RankRow {
  PartId pid = 0;
  std::int64_t elems = 0;
  std::int64_t nodes = 0;
  std::int64_t edge_cuts = 0;

  friend bool operator==(const RankRow&, const RankRow&) = default;
};

struct Report {
  std::vector<RankRow> rows;
  Weight edge_cut = 0;
  NodeRatio node_ratio;
  /// max/min element count; +inf when some rank holds no element.
  double elem_max_min = 1.0;
};

Report build_report(const Mesh& mesh, const Partition& elem_partition, const NodeOwnership& ownership);

/// Columns: pid,elems,nodes,edge_cuts followed by a `# key,value` footer.
void write_report_csv(std::ostream& out, const Report& report);
void write_report_text(std::ostream& out, const Report& report);

struct PartitionSummary {
  Weight edge_cut = 0;
  std::vector<std::int64_t> sizes;
  double max_over_avg = 0.0;
  /// +inf when a part is empty.
  double max_over_min = 0.0;
  double wall_seconds = 0.0;
};

PartitionSummary summarize_partition(const Graph& g, const Partition& p, double wall_seconds = 0.0);
void write_summary_text(std::ostream& out, const PartitionSummary& s);
void write_summary_csv(std::ostream& out, const PartitionSummary& s);

/// One configuration of a method/node-strategy comparison.
struct CompareRow {
  std::string method;
  std::string node_strategy;
  PartId np = 0;
  PartId np2 = 0;
  Weight edge_cut = 0;
  double elem_max_min = 0.0;
  double elem_max_avg = 0.0;
  std::int64_t nodes_max = 0;
  std::int64_t nodes_min = 0;
  double node_ratio = 0.0;

  friend bool operator==(const CompareRow&, const CompareRow&) = default;
};

/// Header: method,node_strategy,np,np2,edge_cut,elem_max_min,elem_max_avg,nodes_max,nodes_min,nr
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);
void write_compare_text(std::ostream& out, const std::vector<CompareRow>& rows);

/// Rows for the given element partition under every node strategy.
std::vector<CompareRow> compare_node_strategies(const Mesh& mesh, const Partition& elem_partition,
                                                const std::string& method, PartId np2, std::uint64_t seed);

/// Shortest round-trip decimal form; "inf" for infinity.
std::string format_number(double v);

}  // namespace hierpart
