#ifndef HPLWO_SYNTHETIC_H
#define HPLWO_SYNTHETIC_H

#include <cstdint>
#include <vector>

#include "hplwo/bgp_classifier.h"
#include "hplwo/net_model.h"
#include "hplwo/tm_pipeline.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

// Inputs of the TM construction pipeline.
struct RawInstance {
  TopologySpec topology;
  std::vector<RouteRecord> routes;
  std::vector<FlowRecord> flows;
};

// A ready-to-optimize instance.
struct Instance {
  TopologySpec topology;
  AggregatedTM tm;
};

// Three routers: L1 = R1-R2 (10 Mbps), L2 = R1-R3 (8), L3 = R3-R2 (8).
// R2 peers on N1, R3 on N2. Link weights favor exiting at R2 (L2 = 2).
TopologySpec ToyTopology();
// Prefix P1 reachable over N1 and N2; R1 sends it 5 Mbps.
RawInstance ToyPipeline();
// Aggregate A0 = {R2:N1, R3:N2}; hp R1 A0 5.
Instance ToyInstance();
// Weights for (L1, L2, L3), both directions alike.
WeightVector ToyWeights(int32_t l1, int32_t l2, int32_t l3);

struct RandomOptions {
  int min_nodes = 3;
  int max_nodes = 8;
  // Links added on top of a random spanning tree.
  int max_extra_links = 3;
  int max_peerings = 4;
  int max_aggregates = 3;
  int max_hp_cells = 4;
  int max_invar_cells = 3;
};

// Connected random topology with peerings on random routers, aggregates over
// distinct peering subsets (size >= 2) and a TM whose hot-potato ingresses
// lie outside their aggregate's egress routers. Deterministic in seed.
Instance RandomInstance(uint64_t seed, const RandomOptions& options = {});

// Twelve routers, six of them border routers with one peering each. 1000
// hot-potato prefixes spread over 26 egress sets; five sets carry 99.95% of
// the hot-potato traffic, thirteen share the remaining 0.05%, eight carry
// none. Also 200 single-egress prefixes and some traffic that exits at its
// own ingress.
RawInstance IspShapedPipeline();

struct ClassificationTruth {
  size_t prefixes = 0;
  size_t hot_potato = 0;
  // Fraction of flow volume addressed to hot-potato prefixes.
  Rational hp_share;
};

// Route dump and flows over a six-router topology with exactly the given
// prefix counts and hot-potato traffic share.
RawInstance ClassificationInstance(const ClassificationTruth& truth);

// `count` TMs derived from `base`: each hp cell scaled by its own factor in
// {0.5, 0.6, ..., 1.5}; invar cells and exits share one factor per TM.
std::vector<AggregatedTM> TrafficBatch(const AggregatedTM& base, size_t count,
                                       uint64_t seed);

}  // namespace hplwo

#endif  // HPLWO_SYNTHETIC_H
