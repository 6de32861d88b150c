#ifndef HPLWO_HP_SIMULATOR_H
#define HPLWO_HP_SIMULATOR_H

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hplwo/igp.h"
#include "hplwo/lwo.h"
#include "hplwo/net_model.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

// BGP step 7: share load across all equally near egresses (iBGP multipath)
// or keep only the lowest (router, peering) pair.
enum class TieBreak { kMultipath, kLowestId };

// Hot-potato decisions on the intradomain topology, independent of the
// virtual-node model. Distances to each egress router are computed once and
// cached.
class HotPotatoRouter {
 public:
  HotPotatoRouter(const ExtendedTopology& xt, const WeightVector& w,
                  TieBreak tie_break = TieBreak::kMultipath);

  // Egress points of `aggregate` at minimum IGP distance from `ingress`.
  // The ingress must not itself be one of the aggregate's egress routers.
  // Throws UnreachableError when no egress can be reached.
  std::vector<EgressPoint> SelectEgresses(const EgressAggregate& aggregate,
                                          const std::string& ingress);

  // Intradomain TM obtained by resolving every hp cell to its selected
  // egresses, v / |selection| each. The result has no hp cells; exits gain
  // the matching peering volumes.
  AggregatedTM Fold(const AggregatedTM& tm);

  // Link loads produced by hop-by-hop forwarding: invar cells follow ECMP to
  // their egress router; for hp cells every router on the way picks its own
  // nearest egresses and splits evenly across the union of ECMP next hops
  // toward them. An egress router of the set exits locally, split evenly
  // over its peerings in the set. Loads are indexed like xt's arcs; virtual
  // arcs carry what leaves through them when xt models the aggregate.
  template <typename T>
  LoadMap<T> Simulate(const AggregatedTM& tm);

 private:
  const DistanceMap& DistancesTo(NodeIndex router);
  std::vector<EgressPoint> Select(const EgressAggregate& aggregate,
                                  NodeIndex ingress);
  // Arc into the aggregate's virtual node taken when exiting at `router`
  // over `peering`, if xt has one.
  std::optional<ArcIndex> VirtualArc(const std::string& aggregate,
                                     const std::string& peering,
                                     NodeIndex router) const;

  const ExtendedTopology& xt_;
  const Graph& intra_;
  WeightVector w_;
  TieBreak tie_break_;
  std::map<NodeIndex, DistanceMap> distances_;
};

std::vector<EgressPoint> SelectEgresses(const ExtendedTopology& xt,
                                        const WeightVector& w,
                                        const EgressAggregate& aggregate,
                                        const std::string& ingress,
                                        TieBreak tie_break = TieBreak::kMultipath);

AggregatedTM FoldHotPotato(const AggregatedTM& tm, const ExtendedTopology& xt,
                           const WeightVector& w,
                           TieBreak tie_break = TieBreak::kMultipath);

template <typename T>
LoadMap<T> SimulateHotPotato(const ExtendedTopology& xt, const WeightVector& w,
                             const AggregatedTM& tm,
                             TieBreak tie_break = TieBreak::kMultipath);

enum class Mode { kOptimistic, kResulting, kBgpAware };
const char* ToString(Mode mode);

struct ModeResult {
  Mode mode = Mode::kOptimistic;
  double umax_intra = 0;
  double umax_inter = 0;
  double phi_total = 0;
  // Indexed like the extended topology's arcs; virtual arcs are 0.
  std::vector<double> utilization;
  WeightVector weights;
  double wall_ms = 0;
  // bgp-aware only: largest relative gap between predicted and simulated
  // per-arc loads.
  double prediction_gap = 0;
};

struct EvalConfig {
  SearchConfig search;
  bool optimistic = true;
  bool resulting = true;
  bool bgp_aware = true;
  // Search the simplified model in bgp-aware mode (requires alpha == 0).
  bool simplify = false;
  TieBreak tie_break = TieBreak::kMultipath;
  bool record_time = false;
};

struct EvalReport {
  std::string tm_id;
  std::vector<ModeResult> modes;

  const ModeResult* Find(Mode mode) const;
};

// Runs the three experiment modes on one TM:
//  optimistic: BGP-blind search on the intradomain TM folded under the
//    deployed weights; loads of that frozen TM under the new weights.
//  resulting: the optimistic weights, with hot-potato traffic re-simulated.
//  bgp-aware: search on the extended topology; loads it predicts.
// Resulting needs optimistic's weights, so asking for resulting runs the
// optimistic search even when optimistic itself is not reported.
EvalReport EvaluateModes(const std::string& tm_id, const ExtendedTopology& xt,
                         const AggregatedTM& tm,
                         const WeightVector& deployed_weights,
                         const EvalConfig& cfg);

// Loads of fixed weights: predicted on the extended topology (reported as
// bgp-aware) and simulated hop-by-hop (reported as resulting).
EvalReport EvaluateWeights(const std::string& tm_id, const ExtendedTopology& xt,
                           const AggregatedTM& tm, const WeightVector& w,
                           const EvalConfig& cfg);

// Right-continuous empirical CDF: one (value, fraction <= value) point per
// distinct value, ascending. Throws InputError on empty input.
std::vector<std::pair<double, double>> Cdf(std::vector<double> values);

// Counts of values in [0, 0.1), [0.1, 0.2), ..., [0.9, 1.0) and [1.0, inf).
std::vector<size_t> UtilizationHistogram(const std::vector<double>& values);

extern template LoadMap<double> HotPotatoRouter::Simulate<double>(
    const AggregatedTM&);
extern template LoadMap<Rational> HotPotatoRouter::Simulate<Rational>(
    const AggregatedTM&);
extern template LoadMap<double> SimulateHotPotato<double>(
    const ExtendedTopology&, const WeightVector&, const AggregatedTM&,
    TieBreak);
extern template LoadMap<Rational> SimulateHotPotato<Rational>(
    const ExtendedTopology&, const WeightVector&, const AggregatedTM&,
    TieBreak);

}  // namespace hplwo

#endif  // HPLWO_HP_SIMULATOR_H
