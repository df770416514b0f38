#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "hierpart/errors.hpp"
#include "hierpart/kway.hpp"

namespace hierpart {

namespace {

// Candidates examined per side when the top-gain vertex cannot move.
constexpr int kScanLimit = 16;

// Gain-ordered move candidates of one side: highest gain first, then lowest id.
using GainSet = std::set<std::pair<Weight, VertexId>>;

Weight move_gain(const Graph& g, const std::vector<PartId>& parts, VertexId v) {
  Weight gain = 0;
  auto nbrs = g.neighbors(v);
  auto wts = g.edge_weights(v);
  for (std::size_t k = 0; k < nbrs.size(); ++k) gain += parts[nbrs[k]] != parts[v] ? wts[k] : -wts[k];
  return gain;
}

Weight bisection_cut(const Graph& g, const std::vector<PartId>& parts) {
  Weight twice = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors(v);
    auto wts = g.edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (parts[nbrs[k]] != parts[v]) twice += wts[k];
  }
  return twice / 2;
}

Weight side0_weight(const Graph& g, const std::vector<PartId>& parts) {
  Weight w = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (parts[v] == 0) w += g.vertex_weight(v);
  return w;
}

struct Window {
  double target;
  double lo;
  double hi;

  double violation(double w) const { return std::max({0.0, lo - w, w - hi}); }
  double deviation(double w) const { return std::abs(w - target); }
};

// Orders states of a move sequence: balance violation, then cut, then
// distance from the target weight.
struct StateKey {
  double violation;
  Weight cut;
  double deviation;

  bool better_than(const StateKey& o) const {
    constexpr double eps = 1e-9;
    if (violation < o.violation - eps) return true;
    if (violation > o.violation + eps) return false;
    if (cut != o.cut) return cut < o.cut;
    return deviation < o.deviation - eps;
  }
};

class GainTracker {
 public:
  GainTracker(const Graph& g, std::vector<PartId>& parts) : g_(g), parts_(parts), gain_(g.num_vertices()) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      gain_[v] = move_gain(g, parts, v);
      sets_[parts[v]].insert({-gain_[v], v});
    }
  }

  const GainSet& side(PartId s) const { return sets_[s]; }
  Weight gain(VertexId v) const { return gain_[v]; }

  /// Flips v to the other side. When `lock` is set v leaves the candidate sets.
  void move(VertexId v, bool lock, std::vector<char>* locked) {
    const PartId from = parts_[v];
    sets_[from].erase({-gain_[v], v});
    parts_[v] = 1 - from;
    gain_[v] = -gain_[v];
    if (lock)
      (*locked)[v] = 1;
    else
      sets_[parts_[v]].insert({-gain_[v], v});
    auto nbrs = g_.neighbors(v);
    auto wts = g_.edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const VertexId u = nbrs[k];
      const Weight delta = parts_[u] == parts_[v] ? -2 * wts[k] : 2 * wts[k];
      const bool tracked = locked == nullptr || !(*locked)[u];
      if (tracked) sets_[parts_[u]].erase({-gain_[u], u});
      gain_[u] += delta;
      if (tracked) sets_[parts_[u]].insert({-gain_[u], u});
    }
  }

 private:
  const Graph& g_;
  std::vector<PartId>& parts_;
  std::vector<Weight> gain_;
  GainSet sets_[2];
};

}  // namespace

namespace detail {

void rebalance_bisection(const Graph& g, std::vector<PartId>& parts, double lo, double hi) {
  const Window win{(lo + hi) / 2, lo, hi};
  auto w0 = static_cast<double>(side0_weight(g, parts));
  if (win.violation(w0) == 0.0) return;
  GainTracker tracker(g, parts);
  while (win.violation(w0) > 0.0) {
    const PartId from = w0 > hi ? 0 : 1;
    VertexId pick = -1;
    int scanned = 0;
    for (auto it = tracker.side(from).begin(); it != tracker.side(from).end() && scanned < kScanLimit;
         ++it, ++scanned) {
      const auto w = static_cast<double>(g.vertex_weight(it->second));
      const double next = from == 0 ? w0 - w : w0 + w;
      if (win.violation(next) < win.violation(w0)) {
        pick = it->second;
        break;
      }
    }
    if (pick < 0) break;
    const auto w = static_cast<double>(g.vertex_weight(pick));
    w0 = from == 0 ? w0 - w : w0 + w;
    tracker.move(pick, false, nullptr);
  }
}

Weight refine_bisection(const Graph& g, std::vector<PartId>& parts, double target, double lo, double hi,
                        int max_passes) {
  const VertexId n = g.num_vertices();
  const Window win{target, lo, hi};
  Weight cut = bisection_cut(g, parts);
  if (n < 2) return cut;
  const std::size_t stall_limit = std::max<std::size_t>(64, static_cast<std::size_t>(n) / 8);

  for (int pass = 0; pass < max_passes; ++pass) {
    auto w0 = static_cast<double>(side0_weight(g, parts));
    const StateKey start{win.violation(w0), cut, win.deviation(w0)};
    StateKey best = start;
    std::size_t best_len = 0;
    Weight cur_cut = cut;

    GainTracker tracker(g, parts);
    std::vector<char> locked(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> moves;

    while (true) {
      VertexId pick = -1;
      Weight pick_gain = 0;
      for (PartId s = 0; s < 2; ++s) {
        int scanned = 0;
        for (auto it = tracker.side(s).begin(); it != tracker.side(s).end() && scanned < kScanLimit;
             ++it, ++scanned) {
          const VertexId v = it->second;
          const auto w = static_cast<double>(g.vertex_weight(v));
          const double next = s == 0 ? w0 - w : w0 + w;
          const bool allowed = win.violation(next) == 0.0 || win.violation(next) < win.violation(w0);
          if (!allowed) continue;
          const Weight gain = -it->first;
          if (pick < 0 || gain > pick_gain || (gain == pick_gain && v < pick)) {
            pick = v;
            pick_gain = gain;
          }
          break;
        }
      }
      if (pick < 0) break;

      const auto w = static_cast<double>(g.vertex_weight(pick));
      w0 = parts[pick] == 0 ? w0 - w : w0 + w;
      cur_cut -= pick_gain;
      tracker.move(pick, true, &locked);
      moves.push_back(pick);

      const StateKey now{win.violation(w0), cur_cut, win.deviation(w0)};
      if (now.better_than(best)) {
        best = now;
        best_len = moves.size();
      } else if (moves.size() - best_len > stall_limit) {
        break;
      }
    }

    for (std::size_t i = moves.size(); i > best_len; --i) parts[moves[i - 1]] = 1 - parts[moves[i - 1]];
    cut = best.cut;
    if (!best.better_than(start)) break;
  }
  return cut;
}

}  // namespace detail

RefineResult fm_refine(const Graph& g, const Partition& p, double target_fraction, double imbalance_tol,
                       int max_passes) {
  check_compatible(g, p);
  if (p.num_parts != 2) throw InvalidArgument("fm_refine: partition must have exactly 2 parts");
  if (!(target_fraction > 0.0 && target_fraction < 1.0))
    throw InvalidArgument("fm_refine: target fraction must lie in (0, 1)");
  if (imbalance_tol < 0.0) throw InvalidArgument("fm_refine: imbalance tolerance must be >= 0");

  const auto total = static_cast<double>(g.total_vertex_weight());
  const double target = target_fraction * total;
  const double slack = imbalance_tol * total + 1e-9 * std::max(1.0, total);
  const double lo = target - slack;
  const double hi = target + slack;

  RefineResult result{p, 0, false};
  const auto w0 = static_cast<double>(side0_weight(g, p.parts));
  if (w0 < lo || w0 > hi) {
    result.cut = bisection_cut(g, p.parts);
    result.infeasible = true;
    return result;
  }
  result.cut = detail::refine_bisection(g, result.partition.parts, target, lo, hi, max_passes);
  return result;
}

}  // namespace hierpart
