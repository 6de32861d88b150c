#ifndef HPLWO_BGP_CLASSIFIER_H
#define HPLWO_BGP_CLASSIFIER_H

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hplwo/net_model.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

// One best route as dumped by one router.
struct RouteRecord {
  std::string router;
  std::string prefix;
  std::string egress;
  std::string peering;

  bool operator==(const RouteRecord&) const = default;
};

// Reads "route <router> <prefix> <egress_router> <peering_id>" lines. When a
// topology is given, routers must be declared intra nodes and each peering
// must exist and belong to the named egress router. A (router, prefix) pair
// may appear only once. Errors are ParseError with the line number.
std::vector<RouteRecord> ParseRouteDump(std::istream& in,
                                        const std::string& source,
                                        const TopologySpec* topology = nullptr);

void WriteRouteDump(std::ostream& out, std::span<const RouteRecord> records);

struct PrefixClassification {
  std::map<std::string, EgressPoint> single_egress;
  // Always at least two distinct egress points.
  std::map<std::string, EgressSet> hot_potato;

  size_t size() const { return single_egress.size() + hot_potato.size(); }
  bool operator==(const PrefixClassification&) const = default;
};

// A prefix whose dumped best routes all name one (egress, peering) pair is
// single-egress; otherwise the distinct pairs form its hot-potato egress set.
// Independent of record order.
PrefixClassification ClassifyPrefixes(std::span<const RouteRecord> records);

// "single <prefix> <router>:<peering>" / "hotpotato <prefix> <r:p>,<r:p>..."
// sorted by prefix.
void WriteClassification(std::ostream& out, const PrefixClassification& cls);
PrefixClassification ParseClassification(std::istream& in,
                                         const std::string& source);

}  // namespace hplwo

#endif  // HPLWO_BGP_CLASSIFIER_H
