#include "hierpart/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "hierpart/errors.hpp"

namespace hierpart {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

double max_over_min(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  if (*lo <= 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*hi) / static_cast<double>(*lo);
}

double max_over_avg(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) return 1.0;
  std::int64_t total = 0;
  for (auto s : sizes) total += s;
  if (total == 0) return 1.0;
  const auto hi = *std::max_element(sizes.begin(), sizes.end());
  return static_cast<double>(hi) * static_cast<double>(sizes.size()) / static_cast<double>(total);
}

// Text form keeps 4 decimals so columns line up.
std::string fixed4(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

Report build_report(const Mesh& mesh, const Partition& elem_partition, const NodeOwnership& ownership) {
  check_element_partition(mesh, elem_partition);
  if (static_cast<NodeId>(ownership.owner.size()) != mesh.num_nodes())
    throw InvalidArgument("report: node ownership lists " + std::to_string(ownership.owner.size()) +
                          " nodes but the mesh has " + std::to_string(mesh.num_nodes()));
  const PartId ranks = std::max<PartId>(elem_partition.num_parts, static_cast<PartId>(ownership.counts.size()));
  const Graph dual = dual_graph(mesh);
  const Partition widened{elem_partition.parts, ranks};
  const auto metrics = per_rank_metrics(dual, widened);

  Report r;
  r.rows.resize(static_cast<std::size_t>(ranks));
  std::vector<std::int64_t> node_counts(static_cast<std::size_t>(ranks), 0);
  std::vector<std::int64_t> elem_counts(static_cast<std::size_t>(ranks), 0);
  for (PartId o : ownership.owner) ++node_counts[o];
  for (PartId p = 0; p < ranks; ++p) {
    r.rows[p] = {p, metrics[p].vertex_count, node_counts[p], metrics[p].boundary_edge_count};
    elem_counts[p] = metrics[p].vertex_count;
  }
  r.edge_cut = edge_cut(dual, widened);
  r.node_ratio = node_ratio(node_counts);
  r.elem_max_min = max_over_min(elem_counts);
  return r;
}

void write_report_csv(std::ostream& out, const Report& report) {
  out << "pid,elems,nodes,edge_cuts\n";
  for (const auto& row : report.rows)
    out << row.pid << ',' << row.elems << ',' << row.nodes << ',' << row.edge_cuts << '\n';
  out << "# edge_cut," << report.edge_cut << '\n';
  out << "# nr," << format_number(report.node_ratio.value) << '\n';
  out << "# elem_max_min," << format_number(report.elem_max_min) << '\n';
}

void write_report_text(std::ostream& out, const Report& report) {
  out << std::setw(6) << "pid" << std::setw(10) << "elems" << std::setw(10) << "nodes" << std::setw(12)
      << "edge-cuts" << '\n';
  for (const auto& row : report.rows)
    out << std::setw(6) << row.pid << std::setw(10) << row.elems << std::setw(10) << row.nodes << std::setw(12)
        << row.edge_cuts << '\n';
  out << "edge cut:       " << report.edge_cut << '\n';
  out << "NR:             " << fixed4(report.node_ratio.value);
  if (report.node_ratio.has_empty_rank) out << " (a rank owns no nodes)";
  out << '\n';
  out << "elem max/min:   " << fixed4(report.elem_max_min) << '\n';
}

PartitionSummary summarize_partition(const Graph& g, const Partition& p, double wall_seconds) {
  PartitionSummary s;
  s.edge_cut = edge_cut(g, p);
  s.sizes = part_sizes(p);
  s.max_over_avg = max_over_avg(s.sizes);
  s.max_over_min = max_over_min(s.sizes);
  s.wall_seconds = wall_seconds;
  return s;
}

void write_summary_text(std::ostream& out, const PartitionSummary& s) {
  out << "parts:          " << s.sizes.size() << '\n';
  out << "edge cut:       " << s.edge_cut << '\n';
  out << "sizes:         ";
  for (auto v : s.sizes) out << ' ' << v;
  out << '\n';
  out << "max/avg size:   " << fixed4(s.max_over_avg) << '\n';
  out << "max/min size:   " << fixed4(s.max_over_min) << '\n';
  out << "wall time [s]:  " << std::fixed << std::setprecision(6) << s.wall_seconds << '\n';
  out << std::defaultfloat;
}

void write_summary_csv(std::ostream& out, const PartitionSummary& s) {
  out << "key,value\n";
  out << "parts," << s.sizes.size() << '\n';
  out << "edge_cut," << s.edge_cut << '\n';
  out << "sizes,";
  for (std::size_t i = 0; i < s.sizes.size(); ++i) out << (i ? " " : "") << s.sizes[i];
  out << '\n';
  out << "max_over_avg," << format_number(s.max_over_avg) << '\n';
  out << "max_over_min," << format_number(s.max_over_min) << '\n';
  out << "wall_seconds," << format_number(s.wall_seconds) << '\n';
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "method,node_strategy,np,np2,edge_cut,elem_max_min,elem_max_avg,nodes_max,nodes_min,nr\n";
  for (const auto& r : rows)
    out << r.method << ',' << r.node_strategy << ',' << r.np << ',' << r.np2 << ',' << r.edge_cut << ','
        << format_number(r.elem_max_min) << ',' << format_number(r.elem_max_avg) << ',' << r.nodes_max << ','
        << r.nodes_min << ',' << format_number(r.node_ratio) << '\n';
}

void write_compare_text(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << std::left << std::setw(10) << "method" << std::setw(14) << "nodes" << std::right << std::setw(6) << "np"
      << std::setw(6) << "np2" << std::setw(10) << "edge-cut" << std::setw(10) << "elem m/m" << std::setw(10)
      << "nodes max" << std::setw(10) << "nodes min" << std::setw(10) << "NR" << '\n';
  for (const auto& r : rows)
    out << std::left << std::setw(10) << r.method << std::setw(14) << r.node_strategy << std::right << std::setw(6)
        << r.np << std::setw(6) << r.np2 << std::setw(10) << r.edge_cut << std::setw(10) << fixed4(r.elem_max_min)
        << std::setw(10) << r.nodes_max << std::setw(10) << r.nodes_min << std::setw(10) << fixed4(r.node_ratio)
        << '\n';
}

std::vector<CompareRow> compare_node_strategies(const Mesh& mesh, const Partition& elem_partition,
                                                const std::string& method, PartId np2, std::uint64_t seed) {
  check_element_partition(mesh, elem_partition);
  const Graph dual = dual_graph(mesh);
  const auto sizes = part_sizes(elem_partition);
  const Weight cut = edge_cut(dual, elem_partition);
  std::vector<CompareRow> rows;
  for (NodeStrategy s : {NodeStrategy::LowestRank, NodeStrategy::Parity, NodeStrategy::InterfacePartition}) {
    const NodeOwnership own = assign_nodes(s, mesh, elem_partition, seed);
    CompareRow row;
    row.method = method;
    row.node_strategy = std::string(to_string(s));
    row.np = elem_partition.num_parts;
    row.np2 = np2;
    row.edge_cut = cut;
    row.elem_max_min = max_over_min(sizes);
    row.elem_max_avg = max_over_avg(sizes);
    row.nodes_max = *std::max_element(own.counts.begin(), own.counts.end());
    row.nodes_min = *std::min_element(own.counts.begin(), own.counts.end());
    row.node_ratio = node_ratio(own).value;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hierpart
