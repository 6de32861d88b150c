#include "hplwo/tm_pipeline.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "hplwo/error.h"
#include "hplwo/igp.h"
#include "line_reader.h"

namespace hplwo {

std::vector<FlowRecord> ParseFlows(std::istream& in,
                                   const std::string& source) {
  std::vector<FlowRecord> flows;
  LineReader reader(in, source);
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f[0] != "flow") reader.Fail("unknown record '" + f[0] + "'");
    reader.ExpectFields(f, 4);
    Rational volume = reader.Number(f[3]);
    if (volume < 0) reader.Fail("negative flow volume");
    flows.push_back({f[1], f[2], volume});
  }
  return flows;
}

void WriteFlows(std::ostream& out, std::span<const FlowRecord> flows) {
  for (const FlowRecord& f : flows) {
    out << "flow " << f.ingress << ' ' << f.prefix << ' '
        << FormatRational(f.volume) << '\n';
  }
}

std::vector<EgressAggregate> AggregateByEgressSet(
    const PrefixClassification& cls) {
  std::map<EgressSet, std::vector<std::string>> groups;
  for (const auto& [prefix, set] : cls.hot_potato) groups[set].push_back(prefix);
  std::vector<EgressAggregate> out;
  for (auto& [set, prefixes] : groups) {
    out.push_back({"A" + std::to_string(out.size()), set, std::move(prefixes),
                   Rational(0)});
  }
  return out;
}

namespace {

// prefix -> index into aggregates
std::map<std::string, size_t> MemberIndex(
    std::span<const EgressAggregate> aggregates) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < aggregates.size(); ++i) {
    for (const std::string& p : aggregates[i].member_prefixes) index[p] = i;
  }
  return index;
}

// "A12" sorts after "A2".
bool IdLess(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

void AttachVolumes(std::span<EgressAggregate> aggregates,
                   const PrefixClassification& cls,
                   std::span<const FlowRecord> flows) {
  std::map<std::string, size_t> index =
      MemberIndex(std::span<const EgressAggregate>(aggregates));
  for (EgressAggregate& a : aggregates) a.attracted_volume = 0;
  for (const FlowRecord& f : flows) {
    if (cls.single_egress.count(f.prefix)) continue;
    if (!cls.hot_potato.count(f.prefix)) {
      throw InputError("flow references unclassified prefix '" + f.prefix +
                       "'");
    }
    auto it = index.find(f.prefix);
    if (it == index.end()) {
      throw InputError("hot-potato prefix '" + f.prefix +
                       "' belongs to no aggregate");
    }
    EgressAggregate& agg = aggregates[it->second];
    if (!agg.HasEgressRouter(f.ingress)) agg.attracted_volume += f.volume;
  }
}

TruncationResult TruncateAggregates(std::vector<EgressAggregate> aggregates,
                                    const Rational& coverage) {
  if (coverage <= 0 || coverage > 1) {
    throw ConfigError("coverage must lie in (0, 1]");
  }
  std::stable_sort(aggregates.begin(), aggregates.end(),
                   [](const EgressAggregate& a, const EgressAggregate& b) {
                     if (a.attracted_volume != b.attracted_volume) {
                       return a.attracted_volume > b.attracted_volume;
                     }
                     return IdLess(a.id, b.id);
                   });
  Rational total = 0;
  for (const EgressAggregate& a : aggregates) total += a.attracted_volume;
  Rational target = coverage * total;

  TruncationResult out;
  Rational covered = 0;
  for (EgressAggregate& a : aggregates) {
    bool need_more = total > 0 && covered < target;
    if (need_more && a.attracted_volume > 0) {
      covered += a.attracted_volume;
      out.kept.push_back(std::move(a));
    } else {
      out.remainder.push_back(std::move(a));
    }
  }
  auto by_id = [](const EgressAggregate& a, const EgressAggregate& b) {
    return IdLess(a.id, b.id);
  };
  std::sort(out.kept.begin(), out.kept.end(), by_id);
  std::sort(out.remainder.begin(), out.remainder.end(), by_id);
  return out;
}

namespace {

void AddExit(std::map<std::string, Rational>* exits, const EgressSet& set,
             const std::string& router, const Rational& volume) {
  std::vector<const EgressPoint*> local;
  for (const EgressPoint& e : set) {
    if (e.router == router) local.push_back(&e);
  }
  Rational share = volume / static_cast<long>(local.size());
  for (const EgressPoint* e : local) (*exits)[e->peering] += share;
}

// Egress router of `set` nearest to `ingress` under w; lowest id on ties.
class PinningOracle {
 public:
  PinningOracle(const Topology& t, const WeightVector& w) : t_(t), w_(w) {}

  const std::string& Nearest(const std::string& ingress, const EgressSet& set) {
    const Graph& g = t_.graph();
    NodeIndex s = g.NodeOrThrow(ingress);
    const std::string* best = nullptr;
    int64_t best_distance = kUnreachable;
    for (const EgressPoint& e : set) {
      const DistanceMap& d = DistancesTo(g.NodeOrThrow(e.router));
      int64_t here = d.distance[s];
      if (here == kUnreachable) continue;
      if (best == nullptr || here < best_distance ||
          (here == best_distance && e.router < *best)) {
        best = &e.router;
        best_distance = here;
      }
    }
    if (best == nullptr) {
      throw UnreachableError(ingress, FormatEgressSet(set));
    }
    return *best;
  }

 private:
  const DistanceMap& DistancesTo(NodeIndex egress) {
    auto it = cache_.find(egress);
    if (it == cache_.end()) {
      it = cache_.emplace(egress, ShortestDistances(t_.graph(), w_, egress))
               .first;
    }
    return it->second;
  }

  const Topology& t_;
  const WeightVector& w_;
  std::map<NodeIndex, DistanceMap> cache_;
};

}  // namespace

AggregatedTM BuildAggregatedTM(std::span<const FlowRecord> flows,
                               const PrefixClassification& cls,
                               const std::vector<EgressAggregate>& kept,
                               const std::vector<EgressAggregate>& remainder,
                               const Topology& topology,
                               const WeightVector& deployed_weights) {
  AggregatedTM tm;
  tm.aggregates = kept;

  std::map<std::string, const EgressAggregate*> kept_of;
  std::map<std::string, const EgressAggregate*> remainder_of;
  for (const EgressAggregate& a : kept) {
    for (const std::string& p : a.member_prefixes) kept_of[p] = &a;
  }
  for (const EgressAggregate& a : remainder) {
    for (const std::string& p : a.member_prefixes) remainder_of[p] = &a;
  }

  const Graph& g = topology.graph();
  PinningOracle pinning(topology, deployed_weights);
  Rational total_in = 0;
  for (const FlowRecord& f : flows) {
    g.NodeOrThrow(f.ingress);
    total_in += f.volume;
    if (auto it = cls.single_egress.find(f.prefix);
        it != cls.single_egress.end()) {
      g.NodeOrThrow(it->second.router);
      tm.invar[{f.ingress, it->second.router}] += f.volume;
      tm.exits[it->second.peering] += f.volume;
      continue;
    }
    auto hp = cls.hot_potato.find(f.prefix);
    if (hp == cls.hot_potato.end()) {
      throw InputError("flow references unclassified prefix '" + f.prefix +
                       "'");
    }
    const EgressSet& set = hp->second;
    bool local = std::any_of(set.begin(), set.end(), [&](const EgressPoint& e) {
      return e.router == f.ingress;
    });
    if (local) {
      // eBGP > iBGP: the ingress exits on its own peering.
      tm.invar[{f.ingress, f.ingress}] += f.volume;
      AddExit(&tm.exits, set, f.ingress, f.volume);
    } else if (auto k = kept_of.find(f.prefix); k != kept_of.end()) {
      tm.hp[{f.ingress, k->second->id}] += f.volume;
    } else if (remainder_of.count(f.prefix)) {
      const std::string& egress = pinning.Nearest(f.ingress, set);
      tm.invar[{f.ingress, egress}] += f.volume;
      AddExit(&tm.exits, set, egress, f.volume);
    } else {
      throw InputError("hot-potato prefix '" + f.prefix +
                       "' belongs to no aggregate");
    }
  }

  if (tm.TotalInvar() + tm.TotalHp() != total_in) {
    throw InternalError("aggregated TM does not conserve volume");
  }
  return tm;
}

void WriteAggregatedTM(std::ostream& out, const AggregatedTM& tm) {
  for (const EgressAggregate& a : tm.aggregates) {
    out << "aggregate " << a.id << ' ' << FormatEgressSet(a.egress_set)
        << '\n';
  }
  for (const auto& [key, v] : tm.invar) {
    out << "invar " << key.first << ' ' << key.second << ' '
        << FormatRational(v) << '\n';
  }
  for (const auto& [key, v] : tm.hp) {
    out << "hp " << key.first << ' ' << key.second << ' ' << FormatRational(v)
        << '\n';
  }
  for (const auto& [peering, v] : tm.exits) {
    out << "exit " << peering << ' ' << FormatRational(v) << '\n';
  }
}

AggregatedTM ParseAggregatedTM(std::istream& in, const std::string& source) {
  AggregatedTM tm;
  LineReader reader(in, source);
  std::vector<std::string> f;
  std::set<std::string> aggregate_ids;
  auto volume = [&](const std::string& text) {
    Rational v = reader.Number(text);
    if (v < 0) reader.Fail("negative volume");
    return v;
  };
  while (reader.Next(&f)) {
    if (f[0] == "aggregate") {
      reader.ExpectFields(f, 3);
      if (!aggregate_ids.insert(f[1]).second) {
        reader.Fail("duplicate aggregate '" + f[1] + "'");
      }
      EgressAggregate a;
      a.id = f[1];
      try {
        a.egress_set = ParseEgressSet(f[2]);
      } catch (const InputError& e) {
        reader.Fail(e.what());
      }
      tm.aggregates.push_back(std::move(a));
    } else if (f[0] == "invar") {
      reader.ExpectFields(f, 4);
      tm.invar[{f[1], f[2]}] += volume(f[3]);
    } else if (f[0] == "hp") {
      reader.ExpectFields(f, 4);
      if (!aggregate_ids.count(f[2])) {
        reader.Fail("hp cell names undeclared aggregate '" + f[2] + "'");
      }
      tm.hp[{f[1], f[2]}] += volume(f[3]);
    } else if (f[0] == "exit") {
      reader.ExpectFields(f, 3);
      tm.exits[f[1]] += volume(f[2]);
    } else {
      reader.Fail("unknown record '" + f[0] + "'");
    }
  }
  for (const auto& [key, v] : tm.hp) {
    for (EgressAggregate& a : tm.aggregates) {
      if (a.id == key.second) a.attracted_volume += v;
    }
  }
  return tm;
}

}  // namespace hplwo
