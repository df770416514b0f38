#include <doctest.h>

#include "helpers.hpp"
#include "hierpart/errors.hpp"
#include "hierpart/hierarchy.hpp"
#include "hierpart/mesh.hpp"

using namespace hierpart;
using namespace hierpart::testing;

namespace {

std::vector<double> weight_values(const SplitPlan& p) {
  return {p.weights.values().begin(), p.weights.values().end()};
}

}  // namespace

TEST_CASE("compute_splits examples") {
  auto p = compute_splits(10, 4);
  CHECK(p.remainder == 2);
  CHECK(p.num_groups == 3);
  CHECK(p.sub_parts == std::vector<PartId>{2, 4, 4});
  CHECK(weight_values(p) == std::vector<double>{0.2, 0.4, 0.4});
  CHECK(p.offsets == std::vector<PartId>{0, 2, 6});

  auto u = compute_splits(8, 4);
  CHECK(u.num_groups == 2);
  CHECK(u.sub_parts == std::vector<PartId>{4, 4});
  CHECK(weight_values(u) == std::vector<double>{0.5, 0.5});
  CHECK(u.offsets == std::vector<PartId>{0, 4});

  auto one = compute_splits(1, 1);
  CHECK(one.sub_parts == std::vector<PartId>{1});
  CHECK(weight_values(one) == std::vector<double>{1.0});
  CHECK(one.offsets == std::vector<PartId>{0});

  auto small = compute_splits(3, 4);
  CHECK(small.remainder == 3);
  CHECK(small.num_groups == 1);
  CHECK(small.sub_parts == std::vector<PartId>{3});
  CHECK(small.offsets == std::vector<PartId>{0});

  CHECK_THROWS_AS(compute_splits(0, 4), InvalidArgument);
  CHECK_THROWS_AS(compute_splits(4, 0), InvalidArgument);
}

TEST_CASE("split plan invariants over a parameter sweep") {
  for (PartId np = 1; np <= 200; ++np)
    for (PartId np2 = 1; np2 <= 40; ++np2) {
      auto p = compute_splits(np, np2);
      PartId sum = 0;
      for (std::size_t c = 0; c < p.sub_parts.size(); ++c) {
        CHECK(p.offsets[c] == sum);
        CHECK(p.sub_parts[c] >= 1);
        CHECK(p.sub_parts[c] <= np2);
        sum += p.sub_parts[c];
      }
      CHECK(sum == np);
      CHECK(p.offsets.back() + p.sub_parts.back() == np);
    }
}

TEST_CASE("trivial_distribute chunks by id") {
  using C = RankLayout::Chunk;
  CHECK(trivial_distribute(10, 3).chunks == std::vector<C>{{0, 4}, {4, 7}, {7, 10}});
  CHECK(trivial_distribute(4, 1).chunks == std::vector<C>{{0, 4}});
  CHECK(trivial_distribute(6, 3).chunks == std::vector<C>{{0, 2}, {2, 4}, {4, 6}});
  CHECK_THROWS_AS(trivial_distribute(2, 3), InfeasibleError);
  CHECK_THROWS_AS(trivial_distribute(2, 0), InvalidArgument);

  auto l = trivial_distribute(10, 3);
  CHECK(l.owner(0) == 0);
  CHECK(l.owner(4) == 1);
  CHECK(l.owner(9) == 2);
}

TEST_CASE("discover_exchange example") {
  auto layout = trivial_distribute(4, 2);
  auto plan = discover_exchange(layout, Partition::make({1, 0, 0, 1}, 2));
  REQUIRE(plan.messages.size() == 4);
  CHECK(plan.messages[0] == ExchangeMessage{0, 0, {1}});
  CHECK(plan.messages[1] == ExchangeMessage{0, 1, {0}});
  CHECK(plan.messages[2] == ExchangeMessage{1, 0, {2}});
  CHECK(plan.messages[3] == ExchangeMessage{1, 1, {3}});
  CHECK(plan.gathered(0) == std::vector<VertexId>{1, 2});
  CHECK(plan.gathered(1) == std::vector<VertexId>{0, 3});
  using In = ExchangePlan::Incoming;
  CHECK(plan.incoming[0] == std::vector<In>{{0, 1}, {1, 1}});
}

TEST_CASE("discover_exchange degenerate layouts") {
  auto single = discover_exchange(trivial_distribute(5, 1), Partition::uniform(5));
  REQUIRE(single.messages.size() == 1);
  CHECK(single.messages[0] == ExchangeMessage{0, 0, {0, 1, 2, 3, 4}});

  auto layout = trivial_distribute(9, 3);
  std::vector<PartId> own(9);
  for (VertexId v = 0; v < 9; ++v) own[v] = layout.owner(v);
  auto self = discover_exchange(layout, Partition::make(own, 3));
  for (const auto& m : self.messages) CHECK(m.sender == m.receiver);

  CHECK_THROWS_AS(discover_exchange(trivial_distribute(4, 2), Partition::make({0, 2, 0, 1}, 3)), InvalidArgument);
  CHECK_THROWS_AS(discover_exchange(trivial_distribute(4, 2), Partition::make({0, 1}, 2)), InvalidArgument);
}

TEST_CASE("exchange conserves vertices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto nv = static_cast<VertexId>(16 + rng() % 2000);
    const auto ranks = static_cast<std::int32_t>(1 + rng() % 16);
    auto p1 = random_partition(rng, nv, ranks);
    auto plan = discover_exchange(trivial_distribute(nv, ranks), p1);
    std::vector<int> seen(nv, 0);
    auto sizes = part_sizes(p1);
    for (std::int32_t r = 0; r < ranks; ++r) {
      auto vc = plan.gathered(r);
      CHECK(static_cast<std::int64_t>(vc.size()) == sizes[r]);
      for (VertexId v : vc) {
        ++seen[v];
        CHECK(p1[v] == r);
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("compose_final examples") {
  auto p8 = compose_final(Partition::make({0, 1}, 2), Partition::make({2, 3}, 4), compute_splits(8, 4));
  CHECK(p8.parts == std::vector<PartId>{2, 7});
  CHECK(p8.num_parts == 8);

  auto p10 = compose_final(Partition::make({0, 1, 2}, 3), Partition::make({1, 3, 0}, 4), compute_splits(10, 4));
  CHECK(p10.parts == std::vector<PartId>{1, 5, 6});

  auto deg = compose_final(Partition::make({0, 3, 2, 1}, 5), Partition::uniform(4), compute_splits(5, 1));
  CHECK(deg.parts == std::vector<PartId>{0, 3, 2, 1});

  CHECK_THROWS_AS(
      compose_final(Partition::make({0}, 3), Partition::make({2}, 4), compute_splits(10, 4)), InvalidArgument);
}

TEST_CASE("compose_final respects block structure and the uniform formula") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto np = static_cast<PartId>(1 + rng() % 64);
    const auto np2 = static_cast<PartId>(1 + rng() % 16);
    auto plan = compute_splits(np, np2);
    const VertexId n = 50;
    std::vector<PartId> a(n), b(n);
    for (VertexId v = 0; v < n; ++v) {
      a[v] = static_cast<PartId>(rng() % plan.num_groups);
      b[v] = static_cast<PartId>(rng() % plan.sub_parts[a[v]]);
    }
    auto p = compose_final(Partition::make(a, plan.num_groups), Partition::make(b, np2), plan);
    for (VertexId v = 0; v < n; ++v) {
      CHECK(p[v] >= plan.offsets[a[v]]);
      CHECK(p[v] < plan.offsets[a[v]] + plan.sub_parts[a[v]]);
      if (np % np2 == 0) CHECK(p[v] == a[v] * np2 + b[v]);
    }
  }
}

TEST_CASE("hierarchical_partition examples") {
  auto g = dual_graph(generate_structured_quad(2, 2));
  auto p = hierarchical_partition(g, 4, 2, 1);
  CHECK(part_sizes(p) == std::vector<std::int64_t>{1, 1, 1, 1});

  auto big = dual_graph(generate_structured_quad(12, 9));
  CHECK(hierarchical_partition(big, 1, 4, 3) == Partition::uniform(big.num_vertices()));

  for (PartId k : {1, 3, 7, 12}) {
    CHECK(hierarchical_partition(big, k, 1, 5) == partition_kway(big, k, TargetWeights::uniform(k), 5));
    CHECK(hierarchical_partition(big, k, 1, 5) == flat_partition(big, k, 5));
  }
  CHECK_THROWS_AS(hierarchical_partition(g, 5, 2, 1), InfeasibleError);
}

TEST_CASE("hierarchical trace is internally consistent") {
  auto g = dual_graph(generate_structured_quad(30, 20));
  auto t = hierarchical_partition_trace(g, 10, 4, 77);
  CHECK(t.plan.sub_parts == std::vector<PartId>{2, 4, 4});
  auto first = part_sizes(t.first_stage);
  for (std::int32_t c = 0; c < t.plan.num_groups; ++c)
    CHECK(static_cast<std::int64_t>(t.exchange.gathered(c).size()) == first[c]);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const PartId c = t.first_stage[v];
    CHECK(t.second_stage[v] < t.plan.sub_parts[c]);
    CHECK(t.final_partition[v] == t.plan.offsets[c] + t.second_stage[v]);
  }
  for (auto s : part_sizes(t.final_partition)) CHECK(s > 0);
}

TEST_CASE("hierarchical_partition handles tight vertex budgets") {
  // 5 vertices, 5 parts, groups of 4: group sizes must be 1 and 4.
  auto g = path_graph(5);
  auto p = hierarchical_partition(g, 5, 4, 2);
  CHECK(count_distinct(p.parts) == 5);
  auto g7 = dual_graph(generate_structured_quad(7, 1));
  auto p7 = hierarchical_partition(g7, 7, 3, 9);
  CHECK(count_distinct(p7.parts) == 7);
}

TEST_CASE("hierarchical balance on the 64x64 grid") {
  auto g = dual_graph(generate_structured_quad(64, 64));
  auto p = hierarchical_partition(g, 10, 4, 1);
  for (auto s : part_sizes(p)) CHECK(std::abs(static_cast<double>(s) - 409.6) <= 40.96);
  CHECK(p == hierarchical_partition(g, 10, 4, 1));
  // Golden sizes for this seed; a change here means the partitioner's output changed.
  CHECK(part_sizes(p) == std::vector<std::int64_t>{399, 420, 411, 409, 410, 409, 409, 410, 410, 409});
}
