#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "hierpart/errors.hpp"
#include "hierpart/hierarchy.hpp"
#include "hierpart/io.hpp"
#include "hierpart/mesh.hpp"
#include "hierpart/nodes.hpp"
#include "hierpart/report.hpp"

namespace hierpart::cli {

namespace {

struct RunConfig {
  std::int32_t nx = 0;
  std::int32_t ny = 0;
  std::int32_t nz = 0;
  PartId np = 1;
  PartId np2 = 1;
  std::string method = "hierarch";
  std::string node_strategy = "interface";
  std::uint64_t seed = 1;
  double tol = 0.03;
  std::string mesh;
  std::string graph;
  std::string elem_part;
  std::string node_part;
  std::string out;
  std::string format = "text";
  int threads = 1;
};

Execution execution(const RunConfig& cfg) {
  if (cfg.threads > 1) {
    omp_set_num_threads(cfg.threads);
    return Execution::Parallel;
  }
  return Execution::Serial;
}

// Runs `fn` against the --out file when given, otherwise against `fallback`.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

Partition partition_graph(const Graph& g, const RunConfig& cfg, const std::string& method) {
  KwayOptions kway;
  kway.imbalance_tol = cfg.tol;
  if (method == "flat") return flat_partition(g, cfg.np, cfg.seed, kway);
  HierarchyOptions opts;
  opts.kway = kway;
  opts.execution = execution(cfg);
  return hierarchical_partition(g, cfg.np, cfg.np2, cfg.seed, opts);
}

void run_gen_mesh(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = cfg.nz > 0 ? generate_structured_hex(cfg.nx, cfg.ny, cfg.nz)
                               : generate_structured_quad(cfg.nx, cfg.ny);
  io::save_mesh(cfg.out, mesh);
  if (!cfg.graph.empty()) io::save_graph(cfg.graph, dual_graph(mesh));
  out << "mesh: " << mesh.num_elements() << " elements, " << mesh.num_nodes() << " nodes -> " << cfg.out << '\n';
}

void run_partition(const RunConfig& cfg, std::ostream& out) {
  const Graph g = !cfg.graph.empty() ? io::load_graph(cfg.graph) : dual_graph(io::load_mesh(cfg.mesh));
  const auto start = std::chrono::steady_clock::now();
  const Partition p = partition_graph(g, cfg, cfg.method);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  io::save_partition(cfg.out, p);
  const auto summary = summarize_partition(g, p, elapsed.count());
  if (cfg.format == "csv")
    write_summary_csv(out, summary);
  else
    write_summary_text(out, summary);
}

void run_assign_nodes(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = io::load_mesh(cfg.mesh);
  const Partition elems = io::load_partition(cfg.elem_part);
  check_element_partition(mesh, elems);
  const NodeOwnership own =
      assign_nodes(parse_node_strategy(cfg.node_strategy), mesh, elems, cfg.seed, execution(cfg));
  io::save_ownership(cfg.out, own);
  const NodeRatio nr = node_ratio(own);
  out << "strategy: " << cfg.node_strategy << '\n' << "NR: " << format_number(nr.value) << '\n';
}

void run_report(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = io::load_mesh(cfg.mesh);
  const Partition elems = io::load_partition(cfg.elem_part);
  const NodeOwnership own = io::load_ownership(cfg.node_part);
  if (elems.size() != mesh.num_elements())
    throw InvalidArgument("'" + cfg.elem_part + "' lists " + std::to_string(elems.size()) + " elements but '" +
                          cfg.mesh + "' has " + std::to_string(mesh.num_elements()));
  if (static_cast<NodeId>(own.owner.size()) != mesh.num_nodes())
    throw InvalidArgument("'" + cfg.node_part + "' lists " + std::to_string(own.owner.size()) + " nodes but '" +
                          cfg.mesh + "' has " + std::to_string(mesh.num_nodes()));
  const Report report = build_report(mesh, elems, own);
  emit(cfg.out, out, [&](std::ostream& os) {
    if (cfg.format == "csv")
      write_report_csv(os, report);
    else
      write_report_text(os, report);
  });
}

void run_compare(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = io::load_mesh(cfg.mesh);
  std::vector<CompareRow> rows;
  if (!cfg.elem_part.empty()) {
    const Partition elems = io::load_partition(cfg.elem_part);
    rows = compare_node_strategies(mesh, elems, "given", cfg.np2, cfg.seed);
  } else {
    const Graph dual = dual_graph(mesh);
    for (const std::string method : {"flat", "hierarch"}) {
      const Partition p = partition_graph(dual, cfg, method);
      auto part = compare_node_strategies(mesh, p, method, method == "flat" ? 1 : cfg.np2, cfg.seed);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  emit(cfg.out, out, [&](std::ostream& os) {
    if (cfg.format == "csv")
      write_compare_csv(os, rows);
    else
      write_compare_text(os, rows);
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hierarchical two-level mesh/graph partitioning and interface node assignment"};
  app.require_subcommand(1);

  auto add_np = [&](CLI::App* sub) {
    sub->add_option("--np", cfg.np, "Total number of parts")->check(CLI::PositiveNumber);
    sub->add_option("--np2", cfg.np2, "Parts per compute node (second level)")->check(CLI::PositiveNumber);
    sub->add_option("--method", cfg.method, "Partitioning method")
        ->check(CLI::IsMember({"hierarch", "flat"}));
    sub->add_option("--tol", cfg.tol, "Allowed relative part imbalance")->check(CLI::NonNegativeNumber);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--threads", cfg.threads, "OpenMP threads (1 = serial)")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen-mesh", "Generate a structured quad or hex mesh");
  gen->add_option("--nx", cfg.nx, "Elements along x")->required()->check(CLI::PositiveNumber);
  gen->add_option("--ny", cfg.ny, "Elements along y")->required()->check(CLI::PositiveNumber);
  gen->add_option("--nz", cfg.nz, "Elements along z (hex mesh when given)")->check(CLI::PositiveNumber);
  gen->add_option("--out", cfg.out, "Mesh file to write")->required();
  gen->add_option("--graph", cfg.graph, "Also write the element dual graph here");

  auto* part = app.add_subcommand("partition", "Partition a mesh dual graph or a graph file");
  auto* mesh_opt = part->add_option("--mesh", cfg.mesh, "Mesh file");
  auto* graph_opt = part->add_option("--graph", cfg.graph, "Graph file");
  mesh_opt->excludes(graph_opt);
  part->add_option("--out", cfg.out, "Partition file to write")->required();
  add_np(part);
  add_common(part);

  auto* assign = app.add_subcommand("assign-nodes", "Assign mesh nodes to ranks");
  assign->add_option("--mesh", cfg.mesh, "Mesh file")->required();
  assign->add_option("--elem-part", cfg.elem_part, "Element partition file")->required();
  assign->add_option("--node-strategy", cfg.node_strategy, "Node assignment strategy")
      ->check(CLI::IsMember({"lowest-rank", "parity", "interface"}));
  assign->add_option("--out", cfg.out, "Node ownership file to write")->required();
  add_common(assign);

  auto* report = app.add_subcommand("report", "Per-rank element/node/edge-cut table");
  report->add_option("--mesh", cfg.mesh, "Mesh file")->required();
  report->add_option("--elem-part", cfg.elem_part, "Element partition file")->required();
  report->add_option("--node-part", cfg.node_part, "Node ownership file")->required();
  report->add_option("--out", cfg.out, "Write the report here instead of stdout");
  add_common(report);

  auto* compare = app.add_subcommand("compare", "Compare partition methods and node strategies");
  compare->add_option("--mesh", cfg.mesh, "Mesh file")->required();
  compare->add_option("--elem-part", cfg.elem_part, "Use this element partition instead of partitioning");
  compare->add_option("--out", cfg.out, "Write the comparison here instead of stdout");
  add_np(compare);
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    if (*gen) {
      run_gen_mesh(cfg, out);
    } else if (*part) {
      if (cfg.mesh.empty() && cfg.graph.empty()) throw InvalidArgument("partition: --mesh or --graph is required");
      run_partition(cfg, out);
    } else if (*assign) {
      run_assign_nodes(cfg, out);
    } else if (*report) {
      run_report(cfg, out);
    } else if (*compare) {
      run_compare(cfg, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kOk;
}

}  // namespace hierpart::cli
