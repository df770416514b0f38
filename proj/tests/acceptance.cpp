// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_helpers.hpp"
#include "helpers.hpp"
#include "hierpart/hierarchy.hpp"
#include "hierpart/nodes.hpp"
#include "hierpart/report.hpp"

using namespace hierpart;
using namespace hierpart::testing;

namespace {

/// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Check split_plan_oracle(std::string& detail) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  for (PartId np = 1; np <= 1024; ++np) {
    for (PartId np2 = 1; np2 <= 128; ++np2) {
      const SplitPlan s = compute_splits(np, np2);
      const std::string tag = "(" + std::to_string(np) + "," + std::to_string(np2) + ")";
      PartId sum = 0;
      for (std::size_t i = 0; i < s.sub_parts.size(); ++i) {
        c.expect(s.sub_parts[i] >= 1 && s.sub_parts[i] <= np2, tag + " s_c out of [1, np2]");
        c.expect(s.offsets[i] == sum, tag + " offsets are not the exclusive prefix sum");
        sum += s.sub_parts[i];
      }
      c.expect(sum == np, tag + " sum of S differs from np");
      c.expect(s.offsets.back() + s.sub_parts.back() == np, tag + " o_last + s_last != np");
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "sweep took " + std::to_string(elapsed) + " s");

  const SplitPlan s = compute_splits(10, 4);
  c.expect(s.sub_parts == std::vector<PartId>{2, 4, 4}, "(10,4) S mismatch");
  c.expect(s.offsets == std::vector<PartId>{0, 2, 6}, "(10,4) O mismatch");
  const std::vector<double> w(s.weights.values().begin(), s.weights.values().end());
  c.expect(w == std::vector<double>{0.2, 0.4, 0.4}, "(10,4) W mismatch");
  detail = "131072 plans in " + std::to_string(elapsed) + " s";
  return c;
}

Check compose_agreement(std::string& detail) {
  Check c;
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const PartId np2 = 1 + static_cast<PartId>(rng() % 16);
    const PartId groups = 1 + static_cast<PartId>(rng() % 16);
    const PartId np = groups * np2;
    const auto n = static_cast<VertexId>(1 + rng() % 500);
    auto p1 = random_partition(rng, n, groups);
    auto p2 = random_partition(rng, n, np2);
    const Partition p = compose_final(p1, p2, compute_splits(np, np2));
    bool same = p.num_parts == np;
    for (VertexId v = 0; v < n; ++v) same = same && p[v] == p1[v] * np2 + p2[v];
    c.expect(same, "trial " + std::to_string(trial) + " differs from p1*np2 + p2");
  }
  detail = "1000 instances";
  return c;
}

Check edge_cut_oracle(std::string& detail) {
  Check c;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<VertexId>(1 + rng() % 8);
    const auto raw = random_raw_graph(rng, n, 0.5, 9);
    const Graph g = build_graph(raw.edges, raw.n);
    const auto p = random_partition(rng, n, 1 + static_cast<PartId>(rng() % 4));
    c.expect(edge_cut(g, p) == brute_force_cut(raw.edges, p.parts), "graph " + std::to_string(trial));
  }
  detail = "50 graphs";
  return c;
}

Check fm_optimality(std::string& detail) {
  Check c;
  const Graph path = path_graph(4);
  const auto r = fm_refine(path, Partition::make({0, 1, 0, 1}, 2), 0.5, 0.25, 10);
  const Weight best = exhaustive_min_bisection_cut(path, 2, 2);
  c.expect(best == 1, "exhaustive optimum is not 1");
  c.expect(r.cut == best, "toy refined cut " + std::to_string(r.cut));
  c.expect(part_sizes(r.partition) == std::vector<std::int64_t>{2, 2}, "toy result is not balanced");

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<VertexId>(2 + rng() % 14);
    const auto raw = random_raw_graph(rng, n, 0.35, 5);
    const Graph g = build_graph(raw.edges, raw.n);
    const auto p = random_partition(rng, n, 2);
    const double tol = 0.05 + 0.05 * static_cast<double>(trial % 6);
    const auto res = fm_refine(g, p, 0.5, tol, 8);
    c.expect(res.cut <= edge_cut(g, p), "cut increased on instance " + std::to_string(trial));
    c.expect(res.cut == edge_cut(g, res.partition), "reported cut wrong on instance " + std::to_string(trial));
  }
  detail = "toy cut " + std::to_string(r.cut) + ", 200 random instances";
  return c;
}

Check balance(std::string& detail) {
  Check c;
  omp_set_num_threads(1);
  const Graph g = dual_graph(generate_structured_quad(64, 64));
  const auto start = std::chrono::steady_clock::now();
  const Partition p = hierarchical_partition(g, 10, 4, 1);
  const double elapsed = seconds_since(start);
  std::ostringstream sizes;
  for (auto s : part_sizes(p)) {
    sizes << s << ' ';
    c.expect(std::abs(static_cast<double>(s) - 409.6) <= 0.1 * 409.6, "part size " + std::to_string(s));
  }
  c.expect(p.num_parts == 10, "wrong part count");
  c.expect(elapsed < 10.0, "took " + std::to_string(elapsed) + " s");
  detail = "sizes " + sizes.str() + "in " + std::to_string(elapsed) + " s";
  return c;
}

Check nr_fixtures(std::string& detail) {
  Check c;
  const std::vector<std::int64_t> good{20, 20, 21, 16, 14, 10, 12, 8};
  const std::vector<std::int64_t> bad{22, 17, 18, 21, 14, 11, 15, 3};
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
  const double nr_good = node_ratio(good).value;
  const double nr_bad = node_ratio(bad).value;
  c.expect(close(nr_good, 2.625), "node_ratio(good) = " + std::to_string(nr_good));
  c.expect(close(nr_bad, 22.0 / 3.0), "node_ratio(bad) = " + std::to_string(nr_bad));
  c.expect(close(balance_stats(good).max_over_min, 2.625), "balance_stats(good)");
  c.expect(close(balance_stats(bad).max_over_min, 22.0 / 3.0), "balance_stats(bad)");
  detail = "NR " + format_number(nr_good) + " and " + format_number(nr_bad);
  return c;
}

Check node_strategy_ordering(std::string& detail) {
  Check c;
  const Mesh m = generate_structured_quad(32, 32);
  const Partition p = hierarchical_partition(dual_graph(m), 8, 4, 1);
  const double low = node_ratio(assign_lowest_rank(m, p)).value;
  const double iface = node_ratio(assign_interface_partition(m, p, 1)).value;
  c.expect(iface <= low, "interface NR above lowest-rank NR");
  c.expect(iface <= 1.5, "interface NR above 1.5");
  detail = "NR lowest-rank " + format_number(low) + ", interface " + format_number(iface);
  return c;
}

Check degenerate(std::string& detail) {
  Check c;
  const Graph g = dual_graph(generate_structured_quad(20, 15));
  for (PartId np2 : {1, 4}) {
    const Partition one = hierarchical_partition(g, 1, np2, 7);
    bool zero = one.num_parts == 1;
    for (PartId id : one.parts) zero = zero && id == 0;
    c.expect(zero, "np=1 is not all-zero");
  }
  int compared = 0;
  for (const Graph& h : {g, dual_graph(generate_structured_hex(6, 5, 4))}) {
    for (PartId np : {2, 3, 7, 16}) {
      for (std::uint64_t seed : {1u, 9u}) {
        c.expect(hierarchical_partition(h, np, 1, seed) == flat_partition(h, np, seed),
                 "np2=1 differs from flat for np=" + std::to_string(np));
        ++compared;
      }
    }
  }
  detail = std::to_string(compared) + " np2=1 comparisons";
  return c;
}

Check cli_determinism(std::string& detail) {
  Check c;
  TempDir dir;
  const std::string bin = std::string("\"") + HIERPART_CLI_PATH + "\"";
  auto run = [&](const std::string& args, const std::string& tag) {
    const std::string cmd = bin + " " + args + " > \"" + dir.file("stdout-" + tag) + "\" 2>&1";
    c.expect(std::system(cmd.c_str()) == 0, "command failed: " + args);
  };
  auto q = [&](const std::string& name) { return "\"" + dir.file(name) + "\""; };

  std::vector<std::string> files;
  for (const std::string tag : {"a", "b"}) {
    run("gen-mesh --nx 24 --ny 18 --out " + q("m" + tag) + " --graph " + q("g" + tag), tag);
    run("gen-mesh --nx 5 --ny 4 --nz 3 --out " + q("h" + tag), tag);
    run("partition --mesh " + q("ma") + " --np 6 --np2 3 --seed 3 --out " + q("ph" + tag), tag);
    run("partition --graph " + q("ga") + " --np 6 --method flat --seed 3 --out " + q("pf" + tag), tag);
    run("partition --mesh " + q("ha") + " --np 5 --np2 2 --threads 4 --out " + q("px" + tag), tag);
    for (const std::string s : {"lowest-rank", "parity", "interface"})
      run("assign-nodes --mesh " + q("ma") + " --elem-part " + q("pha") + " --node-strategy " + s + " --out " +
              q("n" + s + tag),
          tag);
    run("report --mesh " + q("ma") + " --elem-part " + q("pha") + " --node-part " + q("ninterfacea") +
            " --format csv --out " + q("r" + tag),
        tag);
    run("compare --mesh " + q("ma") + " --np 6 --np2 3 --format csv --out " + q("c" + tag), tag);
  }
  for (const std::string f : {"m", "g", "h", "ph", "pf", "px", "nlowest-rank", "nparity", "ninterface", "r", "c"}) {
    const std::string a = slurp(dir.file(f + "a"));
    c.expect(!a.empty(), f + " is empty");
    c.expect(a == slurp(dir.file(f + "b")), f + " differs between runs");
  }
  detail = "11 output files compared";
  return c;
}

Check exchange_conservation(std::string& detail) {
  Check c;
  std::mt19937_64 rng(10);
  int trials = 0;
  for (VertexId nv : {1, 17, 100, 1000, 4096, 10000}) {
    for (std::int32_t ranks : {1, 2, 3, 7, 16}) {
      if (ranks > nv) continue;
      const auto p1 = random_partition(rng, nv, ranks);
      const auto layout = trivial_distribute(nv, ranks);
      const auto plan = discover_exchange(layout, p1);
      const auto sizes = part_sizes(p1);
      std::vector<int> moved(static_cast<std::size_t>(nv), 0);
      for (const auto& msg : plan.messages)
        for (VertexId v : msg.vertices) {
          ++moved[v];
          c.expect(layout.owner(v) == msg.sender && p1[v] == msg.receiver, "vertex routed wrongly");
        }
      for (VertexId v = 0; v < nv; ++v) c.expect(moved[v] == 1, "vertex not transferred exactly once");
      for (std::int32_t r = 0; r < ranks; ++r)
        c.expect(static_cast<std::int64_t>(plan.gathered(r).size()) == sizes[r], "|V_c| differs from part size");
      ++trials;
    }
  }
  detail = std::to_string(trials) + " layouts up to 10000 vertices and 16 ranks";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check(std::string&)>>> criteria{
      {"split plan oracle", split_plan_oracle},
      {"two-stage composition", compose_agreement},
      {"edge-cut oracle", edge_cut_oracle},
      {"FM refinement", fm_optimality},
      {"hierarchical balance 64x64", balance},
      {"NR fixtures", nr_fixtures},
      {"node strategy ordering 32x32", node_strategy_ordering},
      {"degenerate equivalences", degenerate},
      {"CLI determinism", cli_determinism},
      {"exchange conservation", exchange_conservation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    Check c;
    try {
      c = criteria[i].second(detail);
    } catch (const std::exception& e) {
      c.failure = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << (c.ok() ? detail : c.failure) << '\n';
    if (!c.ok()) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
