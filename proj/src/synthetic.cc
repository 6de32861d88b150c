#include "hplwo/synthetic.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "hplwo/lwo.h"

namespace hplwo {

TopologySpec ToyTopology() {
  TopologySpec spec;
  spec.nodes = {"R1", "R2", "R3"};
  spec.links = {{"L1", "R1", "R2", 10, 1},
                {"L2", "R1", "R3", 8, 2},
                {"L3", "R3", "R2", 8, 1}};
  spec.peerings = {{"N1", "R2", "X1", 10}, {"N2", "R3", "X2", 10}};
  return spec;
}

RawInstance ToyPipeline() {
  RawInstance raw;
  raw.topology = ToyTopology();
  raw.routes = {{"R2", "P1", "R2", "N1"}, {"R3", "P1", "R3", "N2"}};
  raw.flows = {{"R1", "P1", 5}};
  return raw;
}

Instance ToyInstance() {
  Instance inst;
  inst.topology = ToyTopology();
  EgressAggregate agg;
  agg.id = "A0";
  agg.egress_set = MakeEgressSet({{"R2", "N1"}, {"R3", "N2"}});
  agg.member_prefixes = {"P1"};
  agg.attracted_volume = 5;
  inst.tm.aggregates.push_back(agg);
  inst.tm.hp[{"R1", "A0"}] = 5;
  return inst;
}

WeightVector ToyWeights(int32_t l1, int32_t l2, int32_t l3) {
  return WeightVector({l1, l1, l2, l2, l3, l3});
}

namespace {

int Between(SearchRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.Below(static_cast<uint64_t>(hi - lo + 1)));
}

}  // namespace

Instance RandomInstance(uint64_t seed, const RandomOptions& options) {
  SearchRng rng(seed);
  Instance inst;
  TopologySpec& spec = inst.topology;
  int n = Between(rng, options.min_nodes, options.max_nodes);
  for (int i = 0; i < n; ++i) spec.nodes.push_back(fmt::format("R{}", i));

  const int capacities[] = {10, 20, 40};
  std::set<std::pair<int, int>> present;
  auto add_link = [&](int a, int b) {
    if (a == b || present.count({std::min(a, b), std::max(a, b)})) return;
    present.insert({std::min(a, b), std::max(a, b)});
    spec.links.push_back({fmt::format("L{}", spec.links.size()),
                          spec.nodes[a], spec.nodes[b],
                          capacities[rng.Below(3)], 1});
  };
  for (int i = 1; i < n; ++i) add_link(Between(rng, 0, i - 1), i);
  int extra = Between(rng, 0, options.max_extra_links);
  for (int e = 0; e < extra; ++e) add_link(Between(rng, 0, n - 1), Between(rng, 0, n - 1));

  int peerings = Between(rng, 2, std::max(2, options.max_peerings));
  for (int p = 0; p < peerings; ++p) {
    spec.peerings.push_back({fmt::format("N{}", p),
                             spec.nodes[rng.Below(n)],
                             fmt::format("X{}", p), capacities[rng.Below(3)]});
  }

  std::set<EgressSet> used;
  int aggregates = Between(rng, 1, options.max_aggregates);
  for (int tries = 0; tries < 20 && static_cast<int>(used.size()) < aggregates;
       ++tries) {
    std::vector<EgressPoint> points;
    for (const PeeringSpec& p : spec.peerings) {
      if (rng.Below(2)) points.push_back({p.egress, p.id});
    }
    if (points.size() < 2) continue;
    EgressSet set = MakeEgressSet(points);
    if (!used.insert(set).second) continue;
    EgressAggregate agg;
    agg.id = fmt::format("A{}", inst.tm.aggregates.size());
    agg.egress_set = set;
    inst.tm.aggregates.push_back(agg);
  }

  int hp_cells = Between(rng, 1, options.max_hp_cells);
  for (int c = 0; c < hp_cells && !inst.tm.aggregates.empty(); ++c) {
    EgressAggregate& agg =
        inst.tm.aggregates[rng.Below(inst.tm.aggregates.size())];
    const std::string& s = spec.nodes[rng.Below(n)];
    if (agg.HasEgressRouter(s)) continue;
    Rational v(Between(rng, 1, 20), 2);
    inst.tm.hp[{s, agg.id}] += v;
    agg.attracted_volume += v;
  }
  int invar_cells = Between(rng, 0, options.max_invar_cells);
  for (int c = 0; c < invar_cells; ++c) {
    const std::string& s = spec.nodes[rng.Below(n)];
    const std::string& t = spec.nodes[rng.Below(n)];
    if (s == t) continue;
    Rational v(Between(rng, 1, 20), 2);
    inst.tm.invar[{s, t}] += v;
    for (const PeeringSpec& p : spec.peerings) {
      if (p.egress == t) {
        inst.tm.exits[p.id] += v;
        break;
      }
    }
  }
  return inst;
}

RawInstance IspShapedPipeline() {
  RawInstance raw;
  TopologySpec& spec = raw.topology;
  const int kRouters = 12;
  const int kBorder = 6;
  for (int i = 0; i < kRouters; ++i) spec.nodes.push_back(fmt::format("R{}", i));
  auto link = [&](int a, int b, int cap) {
    spec.links.push_back({fmt::format("L{}", spec.links.size()),
                          spec.nodes[a], spec.nodes[b], cap, 1});
  };
  for (int i = 0; i < kRouters; ++i) link(i, (i + 1) % kRouters, 2500);
  for (int i = 0; i < kRouters / 2; ++i) link(i, i + kRouters / 2, 622);
  link(0, 3, 622);
  link(6, 9, 622);
  for (int b = 0; b < kBorder; ++b) {
    spec.peerings.push_back({fmt::format("N{}", b), spec.nodes[b],
                             fmt::format("X{}", b), 2500});
  }

  // Egress sets: all pairs of border routers, then triples, first 26.
  std::vector<std::vector<int>> sets;
  for (int size = 2; size <= kBorder && sets.size() < 26; ++size) {
    std::vector<bool> pick(kBorder, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<int> s;
      for (int b = 0; b < kBorder; ++b) {
        if (pick[b]) s.push_back(b);
      }
      sets.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()) &&
             sets.size() < 26);
  }

  const int kHotPrefixes = 1000;
  const int kSinglePrefixes = 200;
  auto hp_prefix = [](int i) { return fmt::format("h{:04d}", i); };
  auto single_prefix = [](int i) { return fmt::format("s{:04d}", i); };
  for (int i = 0; i < kHotPrefixes; ++i) {
    const std::vector<int>& set = sets[i % sets.size()];
    for (int r = 0; r < kRouters; ++r) {
      int egress = std::find(set.begin(), set.end(), r) != set.end() ? r : set[0];
      raw.routes.push_back({spec.nodes[r], hp_prefix(i), spec.nodes[egress],
                            fmt::format("N{}", egress)});
    }
  }
  for (int i = 0; i < kSinglePrefixes; ++i) {
    int egress = i % kBorder;
    for (int r = 0; r < kRouters; ++r) {
      raw.routes.push_back({spec.nodes[r], single_prefix(i),
                            spec.nodes[egress], fmt::format("N{}", egress)});
    }
  }

  // Five dominant sets, thirteen small ones, eight silent.
  const int volumes[18] = {40000, 25000, 15000, 12000, 7950, 2, 3, 4, 5,
                           6,     3,     4,     5,     2,    3, 4, 5, 4};
  for (int s = 0; s < 18; ++s) {
    for (int k = 0; k < 2; ++k) {
      const std::string& prefix = hp_prefix(s + 26 * k);
      for (int j = 0; j < 2; ++j) {
        const std::string& ingress = spec.nodes[kBorder + (s + 3 * j) % kBorder];
        raw.flows.push_back({ingress, prefix, Rational(volumes[s], 4)});
      }
    }
  }
  for (int i = 0; i < 40; ++i) {
    raw.flows.push_back(
        {spec.nodes[kBorder + i % kBorder], single_prefix(i), 1250});
  }
  // Traffic entering at one of the prefix's own egress routers.
  raw.flows.push_back({spec.nodes[sets[0][0]], hp_prefix(0), 700});
  return raw;
}

RawInstance ClassificationInstance(const ClassificationTruth& truth) {
  RawInstance raw;
  TopologySpec& spec = raw.topology;
  spec.nodes = {"R0", "R1", "R2", "R3", "R4", "R5"};
  for (int i = 0; i < 6; ++i) {
    spec.links.push_back({fmt::format("L{}", i), spec.nodes[i],
                          spec.nodes[(i + 1) % 6], 2500, 1});
  }
  for (int b = 0; b < 3; ++b) {
    spec.peerings.push_back({fmt::format("N{}", b), spec.nodes[b],
                             fmt::format("X{}", b), 2500});
  }
  auto prefix = [](size_t i) { return fmt::format("p{:06d}", i); };
  for (size_t i = 0; i < truth.prefixes; ++i) {
    int a = static_cast<int>(i % 3);
    if (i < truth.hot_potato) {
      int b = (a + 1) % 3;
      raw.routes.push_back({spec.nodes[a], prefix(i), spec.nodes[a],
                            fmt::format("N{}", a)});
      raw.routes.push_back({spec.nodes[b], prefix(i), spec.nodes[b],
                            fmt::format("N{}", b)});
      raw.routes.push_back({"R4", prefix(i), spec.nodes[a],
                            fmt::format("N{}", a)});
    } else {
      raw.routes.push_back({spec.nodes[a], prefix(i), spec.nodes[a],
                            fmt::format("N{}", a)});
      raw.routes.push_back({"R4", prefix(i), spec.nodes[a],
                            fmt::format("N{}", a)});
    }
  }
  // 100 flows on each side, scaled to the requested share.
  size_t hp_flows = std::min<size_t>(100, truth.hot_potato);
  size_t single_flows = std::min<size_t>(100, truth.prefixes - truth.hot_potato);
  if (hp_flows > 0) {
    Rational each = truth.hp_share * 1000 / static_cast<long>(hp_flows);
    for (size_t i = 0; i < hp_flows; ++i) {
      raw.flows.push_back({"R4", prefix(i), each});
    }
  }
  if (single_flows > 0) {
    Rational each =
        (1 - truth.hp_share) * 1000 / static_cast<long>(single_flows);
    for (size_t i = 0; i < single_flows; ++i) {
      raw.flows.push_back({"R5", prefix(truth.hot_potato + i), each});
    }
  }
  return raw;
}

std::vector<AggregatedTM> TrafficBatch(const AggregatedTM& base, size_t count,
                                       uint64_t seed) {
  SearchRng rng(seed);
  std::vector<AggregatedTM> out;
  for (size_t i = 0; i < count; ++i) {
    AggregatedTM tm = base;
    Rational common(5 + static_cast<long>(rng.Below(11)), 10);
    for (auto& [key, v] : tm.invar) v *= common;
    for (auto& [key, v] : tm.exits) v *= common;
    for (EgressAggregate& agg : tm.aggregates) agg.attracted_volume = 0;
    for (auto& [key, v] : tm.hp) {
      v *= Rational(5 + static_cast<long>(rng.Below(11)), 10);
      for (EgressAggregate& agg : tm.aggregates) {
        if (agg.id == key.second) agg.attracted_volume += v;
      }
    }
    out.push_back(std::move(tm));
  }
  return out;
}

}  // namespace hplwo
