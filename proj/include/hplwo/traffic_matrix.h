#ifndef HPLWO_TRAFFIC_MATRIX_H
#define HPLWO_TRAFFIC_MATRIX_H

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hplwo/rational.h"

namespace hplwo {

// A candidate exit: border router plus the peering link it exits on.
struct EgressPoint {
  std::string router;
  std::string peering;

  auto operator<=>(const EgressPoint&) const = default;
};

// Sorted, duplicate-free.
using EgressSet = std::vector<EgressPoint>;

// Normalizes an arbitrary list of egress points into an EgressSet.
EgressSet MakeEgressSet(std::vector<EgressPoint> points);

// "R1:N1,R2:N2"
std::string FormatEgressSet(const EgressSet& set);
EgressSet ParseEgressSet(const std::string& text);

// All hot-potato prefixes that share one egress set, represented by a single
// virtual destination node.
struct EgressAggregate {
  std::string id;
  EgressSet egress_set;
  std::vector<std::string> member_prefixes;
  // Hot-potato traffic addressed to the aggregate by ingresses that are not
  // themselves in the egress set.
  Rational attracted_volume;

  bool HasEgressRouter(const std::string& router) const;
};

using CellKey = std::pair<std::string, std::string>;

// Interdomain traffic matrix after prefix aggregation.
//
// invar holds weight-invariant demand (ingress router -> egress router); hp
// holds hot-potato demand (ingress router -> aggregate id). exits records
// where invar traffic leaves the domain (peering id -> Mbps); it is fixed by
// BGP and does not depend on IGP weights.
struct AggregatedTM {
  std::map<CellKey, Rational> invar;
  std::map<CellKey, Rational> hp;
  std::map<std::string, Rational> exits;
  std::vector<EgressAggregate> aggregates;

  Rational TotalInvar() const;
  Rational TotalHp() const;
  Rational TotalExits() const;
  const EgressAggregate* FindAggregate(const std::string& id) const;

  bool operator==(const AggregatedTM& other) const;
};

}  // namespace hplwo

#endif  // HPLWO_TRAFFIC_MATRIX_H
