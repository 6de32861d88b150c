#include "hplwo/traffic_matrix.h"

#include <algorithm>
#include <sstream>

#include "hplwo/error.h"

namespace hplwo {

EgressSet MakeEgressSet(std::vector<EgressPoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::string FormatEgressSet(const EgressSet& set) {
  std::string out;
  for (const EgressPoint& p : set) {
    if (!out.empty()) out += ',';
    out += p.router + ":" + p.peering;
  }
  return out;
}

EgressSet ParseEgressSet(const std::string& text) {
  std::vector<EgressPoint> points;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
      throw InputError("bad egress point '" + item + "'");
    }
    points.push_back({item.substr(0, colon), item.substr(colon + 1)});
  }
  if (points.empty()) throw InputError("empty egress set");
  return MakeEgressSet(std::move(points));
}

bool EgressAggregate::HasEgressRouter(const std::string& router) const {
  return std::any_of(egress_set.begin(), egress_set.end(),
                     [&](const EgressPoint& p) { return p.router == router; });
}

namespace {

template <typename Map>
Rational Sum(const Map& m) {
  Rational total = 0;
  for (const auto& [key, value] : m) total += value;
  return total;
}

}  // namespace

Rational AggregatedTM::TotalInvar() const { return Sum(invar); }
Rational AggregatedTM::TotalHp() const { return Sum(hp); }
Rational AggregatedTM::TotalExits() const { return Sum(exits); }

const EgressAggregate* AggregatedTM::FindAggregate(
    const std::string& id) const {
  for (const EgressAggregate& a : aggregates) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

bool AggregatedTM::operator==(const AggregatedTM& other) const {
  if (invar != other.invar || hp != other.hp || exits != other.exits) {
    return false;
  }
  if (aggregates.size() != other.aggregates.size()) return false;
  for (size_t i = 0; i < aggregates.size(); ++i) {
    if (aggregates[i].id != other.aggregates[i].id ||
        aggregates[i].egress_set != other.aggregates[i].egress_set) {
      return false;
    }
  }
  return true;
}

}  // namespace hplwo
