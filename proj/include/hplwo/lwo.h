#ifndef HPLWO_LWO_H
#define HPLWO_LWO_H

#include <cstdint>
#include <random>
#include <vector>

#include "hplwo/igp.h"
#include "hplwo/net_model.h"
#include "hplwo/objective.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

enum class InitialStrategy { kUnit, kInverseCapacity, kGiven };

// unit: every intra arc 1. inverse-capacity: round(w_max * c_min / c),
// clamped to [1, w_max]; weakly order-reversing in capacity. given: `given`
// returned unchanged after a range check (ConfigError when outside
// [1, w_max] or sized wrong).
WeightVector InitialWeights(const Topology& topology, InitialStrategy strategy,
                            int32_t w_max, const WeightVector* given = nullptr);

struct SearchConfig {
  int iterations = 50;
  uint64_t seed = 1;
  // Neighbors evaluated per iteration; 0 means min(5 * variables, 1000).
  int sample_size = 0;
  int tabu_tenure = 8;
  // Iterations without a new best before jumping back near the best vector.
  int restart_after = 10;
  bool symmetric = true;
  int32_t w_min = 1;
  int32_t w_max = 150;
  CostParams cost;
  InitialStrategy initial = InitialStrategy::kUnit;
  WeightVector given;
  // Worker threads for neighbor evaluation. Results do not depend on it.
  int threads = 1;

  void Validate() const;
};

struct TraceRow {
  int iteration = 0;
  double best_cost = 0;
  double current_cost = 0;
  double umax_intra = 0;
  double umax_inter = 0;
};

struct SearchResult {
  WeightVector weights;
  double cost = 0;
  std::vector<TraceRow> trace;
  int64_t evaluations = 0;
};

// The search variables: each is a group of intra arcs sharing one weight
// (the two directions of a link when symmetric, single arcs otherwise).
std::vector<std::vector<ArcIndex>> WeightVariables(const Topology& topology,
                                                   bool symmetric);

// Changing variable `variable` to `weight`.
struct Move {
  uint32_t variable = 0;
  int32_t weight = 0;

  auto operator<=>(const Move&) const = default;
};

// Deterministic bounded draws on top of mt19937_64 (whose output sequence is
// fixed by the standard, unlike the std distributions).
class SearchRng {
 public:
  explicit SearchRng(uint64_t seed) : engine_(seed) {}
  uint64_t Below(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// All moves when the neighborhood has at most `sample` members, otherwise
// `sample` distinct moves drawn uniformly. Sorted by (variable, weight).
std::vector<Move> SampleNeighborhood(const std::vector<int32_t>& current,
                                     int32_t w_min, int32_t w_max,
                                     size_t sample, SearchRng* rng);

// phi_total of one weight vector, with routing state prepared once.
class WeightEvaluator {
 public:
  WeightEvaluator(const ExtendedTopology& xt, const AggregatedTM& tm,
                  const CostParams& cost);

  double Cost(const WeightVector& w) const;
  LoadMap<double> Loads(const WeightVector& w) const;
  double Cost(const LoadMap<double>& loads) const;

 private:
  const Graph& graph_;
  DemandPlan<double> plan_;
  LinkCost<double> cost_;
  double alpha_;
};

// Tabu local search over integer weights, minimizing phi_total on the given
// (extended) topology so egress selection is part of every evaluation.
// Deterministic for a fixed seed, independent of cfg.threads. Throws
// UnreachableError when some TM cell has no path, ConfigError when alpha > 0
// and the topology has no inter arcs.
SearchResult Optimize(const ExtendedTopology& xt, const AggregatedTM& tm,
                      const SearchConfig& cfg);

}  // namespace hplwo

#endif  // HPLWO_LWO_H
