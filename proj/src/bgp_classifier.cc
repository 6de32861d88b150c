#include "hplwo/bgp_classifier.h"

#include <ostream>
#include <set>
#include <utility>

#include "hplwo/error.h"
#include "line_reader.h"

namespace hplwo {

std::vector<RouteRecord> ParseRouteDump(std::istream& in,
                                        const std::string& source,
                                        const TopologySpec* topology) {
  std::set<std::string> routers;
  std::map<std::string, std::string> peering_egress;
  if (topology != nullptr) {
    routers.insert(topology->nodes.begin(), topology->nodes.end());
    for (const PeeringSpec& p : topology->peerings) {
      peering_egress[p.id] = p.egress;
    }
  }

  std::vector<RouteRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  LineReader reader(in, source);
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f[0] != "route") reader.Fail("unknown record '" + f[0] + "'");
    reader.ExpectFields(f, 5);
    RouteRecord r{f[1], f[2], f[3], f[4]};
    if (topology != nullptr) {
      if (!routers.count(r.router)) reader.Fail("unknown router '" + r.router + "'");
      if (!routers.count(r.egress)) reader.Fail("unknown router '" + r.egress + "'");
      auto it = peering_egress.find(r.peering);
      if (it == peering_egress.end()) {
        reader.Fail("unknown peering '" + r.peering + "'");
      }
      if (it->second != r.egress) {
        reader.Fail("peering '" + r.peering + "' is attached to '" +
                    it->second + "', not '" + r.egress + "'");
      }
    }
    if (!seen.insert({r.router, r.prefix}).second) {
      reader.Fail("duplicate route for prefix '" + r.prefix + "' at router '" +
                  r.router + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

void WriteRouteDump(std::ostream& out, std::span<const RouteRecord> records) {
  for (const RouteRecord& r : records) {
    out << "route " << r.router << ' ' << r.prefix << ' ' << r.egress << ' '
        << r.peering << '\n';
  }
}

PrefixClassification ClassifyPrefixes(std::span<const RouteRecord> records) {
  std::map<std::string, std::set<EgressPoint>> observed;
  for (const RouteRecord& r : records) {
    observed[r.prefix].insert({r.egress, r.peering});
  }
  PrefixClassification cls;
  for (auto& [prefix, points] : observed) {
    if (points.empty()) {
      throw InternalError("prefix '" + prefix + "' has no routes");
    }
    if (points.size() == 1) {
      cls.single_egress.emplace(prefix, *points.begin());
    } else {
      cls.hot_potato.emplace(
          prefix, MakeEgressSet({points.begin(), points.end()}));
    }
  }
  return cls;
}

void WriteClassification(std::ostream& out, const PrefixClassification& cls) {
  // Merge both maps so the file is ordered by prefix alone.
  std::map<std::string, std::string> lines;
  for (const auto& [prefix, e] : cls.single_egress) {
    lines[prefix] = "single " + prefix + " " + e.router + ":" + e.peering;
  }
  for (const auto& [prefix, set] : cls.hot_potato) {
    lines[prefix] = "hotpotato " + prefix + " " + FormatEgressSet(set);
  }
  for (const auto& [prefix, line] : lines) out << line << '\n';
}

PrefixClassification ParseClassification(std::istream& in,
                                         const std::string& source) {
  PrefixClassification cls;
  LineReader reader(in, source);
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    reader.ExpectFields(f, 3);
    if (cls.single_egress.count(f[1]) || cls.hot_potato.count(f[1])) {
      reader.Fail("prefix '" + f[1] + "' listed twice");
    }
    EgressSet set;
    try {
      set = ParseEgressSet(f[2]);
    } catch (const InputError& e) {
      reader.Fail(e.what());
    }
    if (f[0] == "single") {
      if (set.size() != 1) reader.Fail("single-egress prefix needs one egress");
      cls.single_egress.emplace(f[1], set[0]);
    } else if (f[0] == "hotpotato") {
      if (set.size() < 2) reader.Fail("hot-potato prefix needs two egresses");
      cls.hot_potato.emplace(f[1], std::move(set));
    } else {
      reader.Fail("unknown record '" + f[0] + "'");
    }
  }
  return cls;
}

}  // namespace hplwo
