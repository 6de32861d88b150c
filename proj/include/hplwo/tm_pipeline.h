#ifndef HPLWO_TM_PIPELINE_H
#define HPLWO_TM_PIPELINE_H

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hplwo/bgp_classifier.h"
#include "hplwo/net_model.h"
#include "hplwo/rational.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

struct FlowRecord {
  std::string ingress;
  std::string prefix;
  Rational volume;
};

// "flow <ingress_router> <prefix> <mbps>" lines; volumes must be >= 0.
std::vector<FlowRecord> ParseFlows(std::istream& in, const std::string& source);
void WriteFlows(std::ostream& out, std::span<const FlowRecord> flows);

// One aggregate per distinct hot-potato egress set, ids "A0", "A1", ... in
// egress-set order. Volumes are left at zero; see AttachVolumes.
std::vector<EgressAggregate> AggregateByEgressSet(
    const PrefixClassification& cls);

// Sets each aggregate's attracted volume: hot-potato traffic to its member
// prefixes from ingresses outside the egress set. Throws InputError when a
// flow names an unclassified prefix.
void AttachVolumes(std::span<EgressAggregate> aggregates,
                   const PrefixClassification& cls,
                   std::span<const FlowRecord> flows);

struct TruncationResult {
  std::vector<EgressAggregate> kept;
  std::vector<EgressAggregate> remainder;
};

// Keeps the shortest volume-ordered prefix (ties by id) of the aggregates
// whose cumulative volume reaches coverage * total; zero-volume aggregates
// always fall into the remainder. Both lists come back in id order. Throws
// ConfigError unless 0 < coverage <= 1.
TruncationResult TruncateAggregates(std::vector<EgressAggregate> aggregates,
                                    const Rational& coverage);

// Folds flow records into TM_invar / TM_hp:
//  - single-egress prefix with egress t: invar[s, t];
//  - hot-potato prefix and s in its egress routers: invar[s, s];
//  - hot-potato prefix in a kept aggregate P: hp[s, P];
//  - hot-potato prefix in a remainder aggregate: invar[s, e*] where e* is the
//    egress nearest to s under deployed_weights (lowest id on ties).
// Every invar volume is also recorded in exits on its peering link, split
// evenly over the egress router's peerings in the set.
AggregatedTM BuildAggregatedTM(std::span<const FlowRecord> flows,
                               const PrefixClassification& cls,
                               const std::vector<EgressAggregate>& kept,
                               const std::vector<EgressAggregate>& remainder,
                               const Topology& topology,
                               const WeightVector& deployed_weights);

// Text form of an aggregated TM: "aggregate <id> <r:p>,...", "invar <src>
// <dst> <mbps>", "hp <src> <aggregate> <mbps>", "exit <peering> <mbps>".
void WriteAggregatedTM(std::ostream& out, const AggregatedTM& tm);
AggregatedTM ParseAggregatedTM(std::istream& in, const std::string& source);

}  // namespace hplwo

#endif  // HPLWO_TM_PIPELINE_H
