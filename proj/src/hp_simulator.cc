#include "hplwo/hp_simulator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "hplwo/error.h"
#include "hplwo/objective.h"

namespace hplwo {

HotPotatoRouter::HotPotatoRouter(const ExtendedTopology& xt,
                                 const WeightVector& w, TieBreak tie_break)
    : xt_(xt), intra_(xt.base().graph()), w_(w), tie_break_(tie_break) {}

const DistanceMap& HotPotatoRouter::DistancesTo(NodeIndex router) {
  auto it = distances_.find(router);
  if (it == distances_.end()) {
    it = distances_.emplace(router, ShortestDistances(intra_, w_, router)).first;
  }
  return it->second;
}

std::vector<EgressPoint> HotPotatoRouter::Select(
    const EgressAggregate& aggregate, NodeIndex ingress) {
  int64_t best = kUnreachable;
  std::vector<EgressPoint> chosen;
  for (const EgressPoint& e : aggregate.egress_set) {
    int64_t d = DistancesTo(intra_.NodeOrThrow(e.router)).distance[ingress];
    if (d == kUnreachable) continue;
    if (d < best) {
      best = d;
      chosen.clear();
    }
    if (d == best) chosen.push_back(e);
  }
  if (chosen.empty()) {
    throw UnreachableError(intra_.node(ingress).id, aggregate.id);
  }
  // egress sets are sorted, so the first tie is the lowest id
  if (tie_break_ == TieBreak::kLowestId) chosen.resize(1);
  return chosen;
}

std::vector<EgressPoint> HotPotatoRouter::SelectEgresses(
    const EgressAggregate& aggregate, const std::string& ingress) {
  if (aggregate.HasEgressRouter(ingress)) {
    throw InputError("'" + ingress + "' is an egress router of aggregate '" +
                     aggregate.id + "' and exits locally");
  }
  NodeIndex s = intra_.NodeOrThrow(ingress);
  if (intra_.node(s).kind != NodeKind::kIntra) {
    throw InputError("'" + ingress + "' is not an intradomain router");
  }
  return Select(aggregate, s);
}

std::optional<ArcIndex> HotPotatoRouter::VirtualArc(
    const std::string& aggregate, const std::string& peering,
    NodeIndex router) const {
  std::optional<NodeIndex> target = xt_.AggregateNode(aggregate);
  if (!target) return std::nullopt;
  const Graph& g = xt_.graph();
  NodeIndex from = router;
  if (std::optional<ArcIndex> inter = xt_.PeeringArc(peering)) {
    from = g.arc(*inter).dst;
  }
  for (ArcIndex a : g.OutArcs(from)) {
    if (g.arc(a).dst == *target) return a;
  }
  return std::nullopt;
}

namespace {

const EgressAggregate& AggregateOrThrow(const AggregatedTM& tm,
                                        const ExtendedTopology& xt,
                                        const std::string& id) {
  if (const EgressAggregate* a = tm.FindAggregate(id)) return *a;
  for (const EgressAggregate& a : xt.aggregates()) {
    if (a.id == id) return a;
  }
  throw InputError("unknown aggregate '" + id + "'");
}

// The peerings a router uses when it exits locally for this aggregate.
std::vector<std::string> LocalPeerings(const EgressAggregate& aggregate,
                                       const std::string& router,
                                       TieBreak tie_break) {
  std::vector<std::string> out;
  for (const EgressPoint& e : aggregate.egress_set) {
    if (e.router == router) out.push_back(e.peering);
  }
  if (tie_break == TieBreak::kLowestId && out.size() > 1) out.resize(1);
  return out;
}

}  // namespace

AggregatedTM HotPotatoRouter::Fold(const AggregatedTM& tm) {
  AggregatedTM out;
  out.invar = tm.invar;
  out.exits = tm.exits;
  for (const auto& [key, volume] : tm.hp) {
    const EgressAggregate& agg = AggregateOrThrow(tm, xt_, key.second);
    if (agg.HasEgressRouter(key.first)) {
      std::vector<std::string> local =
          LocalPeerings(agg, key.first, tie_break_);
      out.invar[{key.first, key.first}] += volume;
      for (const std::string& p : local) {
        out.exits[p] += volume / static_cast<long>(local.size());
      }
      continue;
    }
    std::vector<EgressPoint> chosen = SelectEgresses(agg, key.first);
    Rational share = volume / static_cast<long>(chosen.size());
    for (const EgressPoint& e : chosen) {
      out.invar[{key.first, e.router}] += share;
      out.exits[e.peering] += share;
    }
  }
  return out;
}

template <typename T>
LoadMap<T> HotPotatoRouter::Simulate(const AggregatedTM& tm) {
  const Graph& g = xt_.graph();
  LoadMap<T> loads(g.num_arcs());
  auto add_exit = [&](const std::string& peering, const T& volume) {
    if (xt_.FindPeering(peering) == nullptr) {
      throw InputError("exit volume on undeclared peering '" + peering + "'");
    }
    if (std::optional<ArcIndex> a = xt_.PeeringArc(peering)) {
      loads.load[*a] += volume;
    }
  };

  // Weight-invariant demand: plain ECMP to the egress router.
  std::map<NodeIndex, std::vector<std::pair<NodeIndex, T>>> invar;
  for (const auto& [key, volume] : tm.invar) {
    NodeIndex s = intra_.NodeOrThrow(key.first);
    NodeIndex t = intra_.NodeOrThrow(key.second);
    if (s != t) invar[t].emplace_back(s, FromRational<T>(volume));
  }
  LoadMap<T> intra_loads(intra_.num_arcs());
  for (const auto& [t, sources] : invar) {
    EcmpDag dag = BuildEcmpDag(intra_, w_, DistancesTo(t));
    RouteToDestination<T>(intra_, dag, sources, &intra_loads);
  }
  for (const auto& [peering, volume] : tm.exits) {
    add_exit(peering, FromRational<T>(volume));
  }

  // Hot-potato demand, one aggregate at a time.
  std::map<std::string, std::vector<std::pair<NodeIndex, T>>> by_aggregate;
  for (const auto& [key, volume] : tm.hp) {
    by_aggregate[key.second].emplace_back(intra_.NodeOrThrow(key.first),
                                          FromRational<T>(volume));
  }
  for (const auto& [id, sources] : by_aggregate) {
    const EgressAggregate& agg = AggregateOrThrow(tm, xt_, id);
    std::set<NodeIndex> egress_routers;
    for (const EgressPoint& e : agg.egress_set) {
      egress_routers.insert(intra_.NodeOrThrow(e.router));
    }
    std::vector<int64_t> nearest(intra_.num_nodes(), kUnreachable);
    for (NodeIndex r : egress_routers) {
      const DistanceMap& d = DistancesTo(r);
      for (NodeIndex u = 0; u < intra_.num_nodes(); ++u) {
        nearest[u] = std::min(nearest[u], d.distance[u]);
      }
    }
    // Every next hop strictly lowers the distance to the nearest egress.
    std::vector<NodeIndex> order(intra_.num_nodes());
    for (NodeIndex u = 0; u < order.size(); ++u) order[u] = u;
    std::stable_sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
      return nearest[a] > nearest[b];
    });

    std::vector<T> at_node(intra_.num_nodes(), T(0));
    for (const auto& [s, volume] : sources) at_node[s] += volume;
    for (NodeIndex u : order) {
      if (at_node[u] == T(0)) continue;
      const T flow = at_node[u];
      if (nearest[u] == kUnreachable) {
        throw UnreachableError(intra_.node(u).id, agg.id);
      }
      if (egress_routers.count(u)) {
        std::vector<std::string> local =
            LocalPeerings(agg, intra_.node(u).id, tie_break_);
        T share = flow / T(static_cast<long>(local.size()));
        for (const std::string& p : local) {
          add_exit(p, share);
          if (std::optional<ArcIndex> v = VirtualArc(agg.id, p, u)) {
            loads.load[*v] += share;
          }
        }
        continue;
      }
      std::set<ArcIndex> next_hops;
      for (const EgressPoint& e : Select(agg, u)) {
        const DistanceMap& d = DistancesTo(intra_.NodeOrThrow(e.router));
        for (ArcIndex a : intra_.OutArcs(u)) {
          NodeIndex v = intra_.arc(a).dst;
          if (d.Reachable(v) && d.distance[u] == w_[a] + d.distance[v]) {
            next_hops.insert(a);
          }
        }
      }
      T share = flow / T(static_cast<long>(next_hops.size()));
      for (ArcIndex a : next_hops) {
        intra_loads.load[a] += share;
        at_node[intra_.arc(a).dst] += share;
      }
    }
  }

  for (ArcIndex a = 0; a < intra_.num_arcs(); ++a) {
    loads.load[a] += intra_loads.load[a];
  }
  return loads;
}

std::vector<EgressPoint> SelectEgresses(const ExtendedTopology& xt,
                                        const WeightVector& w,
                                        const EgressAggregate& aggregate,
                                        const std::string& ingress,
                                        TieBreak tie_break) {
  return HotPotatoRouter(xt, w, tie_break).SelectEgresses(aggregate, ingress);
}

AggregatedTM FoldHotPotato(const AggregatedTM& tm, const ExtendedTopology& xt,
                           const WeightVector& w, TieBreak tie_break) {
  return HotPotatoRouter(xt, w, tie_break).Fold(tm);
}

template <typename T>
LoadMap<T> SimulateHotPotato(const ExtendedTopology& xt, const WeightVector& w,
                             const AggregatedTM& tm, TieBreak tie_break) {
  return HotPotatoRouter(xt, w, tie_break).Simulate<T>(tm);
}

const char* ToString(Mode mode) {
  switch (mode) {
    case Mode::kOptimistic:
      return "optimistic";
    case Mode::kResulting:
      return "resulting";
    case Mode::kBgpAware:
      return "bgp-aware";
  }
  return "?";
}

const ModeResult* EvalReport::Find(Mode mode) const {
  for (const ModeResult& m : modes) {
    if (m.mode == mode) return &m;
  }
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

double ElapsedMs(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

ModeResult Summarize(Mode mode, const LoadMap<double>& loads, const Graph& g,
                     const CostParams& cost, const WeightVector& w) {
  ModeResult r;
  r.mode = mode;
  r.umax_intra = UMax(loads, g, kIntraArcs);
  r.umax_inter = UMax(loads, g, kInterArcs);
  r.phi_total = PhiTotal(loads, g, cost);
  r.utilization = Utilizations(loads, g);
  r.weights = w;
  return r;
}

double MaxRelativeGap(const LoadMap<double>& a, const LoadMap<double>& b) {
  double gap = 0;
  for (size_t i = 0; i < a.load.size(); ++i) {
    double scale = std::max({std::abs(a.load[i]), std::abs(b.load[i]), 1e-12});
    gap = std::max(gap, std::abs(a.load[i] - b.load[i]) / scale);
  }
  return gap;
}

// Loads over the extended arcs, padded with zeros for arcs the smaller
// topology lacks (its intra and inter arcs share indices with xt).
LoadMap<double> Widen(const LoadMap<double>& loads, size_t arcs) {
  LoadMap<double> out(arcs);
  for (size_t i = 0; i < loads.load.size() && i < arcs; ++i) {
    out.load[i] = loads.load[i];
  }
  return out;
}

}  // namespace

EvalReport EvaluateModes(const std::string& tm_id, const ExtendedTopology& xt,
                         const AggregatedTM& tm,
                         const WeightVector& deployed_weights,
                         const EvalConfig& cfg) {
  EvalReport report;
  report.tm_id = tm_id;
  const Graph& g = xt.graph();
  const CostParams& cost = cfg.search.cost;

  if (cfg.optimistic || cfg.resulting) {
    Clock::time_point start = Clock::now();
    AggregatedTM frozen = FoldHotPotato(tm, xt, deployed_weights, cfg.tie_break);
    ExtendedTopology blind = ExtendTopology(xt.base(), xt.peerings(), {});
    SearchResult intra = Optimize(blind, frozen, cfg.search);
    double search_ms = ElapsedMs(start);

    if (cfg.optimistic) {
      LoadMap<double> loads =
          Widen(ComputeLoads<double>(blind, intra.weights, frozen), g.num_arcs());
      report.modes.push_back(
          Summarize(Mode::kOptimistic, loads, g, cost, intra.weights));
      if (cfg.record_time) report.modes.back().wall_ms = search_ms;
    }
    if (cfg.resulting) {
      LoadMap<double> loads =
          SimulateHotPotato<double>(xt, intra.weights, tm, cfg.tie_break);
      report.modes.push_back(
          Summarize(Mode::kResulting, loads, g, cost, intra.weights));
      if (cfg.record_time) report.modes.back().wall_ms = search_ms;
    }
  }

  if (cfg.bgp_aware) {
    Clock::time_point start = Clock::now();
    SearchResult aware;
    if (cfg.simplify) {
      if (cost.alpha != 0) {
        throw ConfigError("the simplified model requires alpha = 0");
      }
      aware = Optimize(SimplifyModel(xt), tm, cfg.search);
    } else {
      aware = Optimize(xt, tm, cfg.search);
    }
    double search_ms = ElapsedMs(start);
    LoadMap<double> predicted = ComputeLoads<double>(xt, aware.weights, tm);
    LoadMap<double> simulated =
        SimulateHotPotato<double>(xt, aware.weights, tm, cfg.tie_break);
    ModeResult r = Summarize(Mode::kBgpAware, predicted, g, cost, aware.weights);
    r.prediction_gap = MaxRelativeGap(predicted, simulated);
    if (cfg.record_time) r.wall_ms = search_ms;
    report.modes.push_back(std::move(r));
  }
  return report;
}

EvalReport EvaluateWeights(const std::string& tm_id, const ExtendedTopology& xt,
                           const AggregatedTM& tm, const WeightVector& w,
                           const EvalConfig& cfg) {
  EvalReport report;
  report.tm_id = tm_id;
  const Graph& g = xt.graph();
  LoadMap<double> predicted = ComputeLoads<double>(xt, w, tm);
  LoadMap<double> simulated = SimulateHotPotato<double>(xt, w, tm, cfg.tie_break);
  ModeResult aware = Summarize(Mode::kBgpAware, predicted, g, cfg.search.cost, w);
  aware.prediction_gap = MaxRelativeGap(predicted, simulated);
  report.modes.push_back(
      Summarize(Mode::kResulting, simulated, g, cfg.search.cost, w));
  report.modes.push_back(std::move(aware));
  return report;
}

std::vector<std::pair<double, double>> Cdf(std::vector<double> values) {
  if (values.empty()) throw InputError("CDF of an empty sample");
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> out;
  double n = static_cast<double>(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

std::vector<size_t> UtilizationHistogram(const std::vector<double>& values) {
  std::vector<size_t> bins(11, 0);
  for (double v : values) {
    // Exact decade boundaries: 0.3 lands in [0.3, 0.4).
    size_t bin = static_cast<size_t>(std::floor(v * 10 + 1e-9));
    ++bins[std::min<size_t>(bin, 10)];
  }
  return bins;
}

template LoadMap<double> HotPotatoRouter::Simulate<double>(const AggregatedTM&);
template LoadMap<Rational> HotPotatoRouter::Simulate<Rational>(
    const AggregatedTM&);
template LoadMap<double> SimulateHotPotato<double>(const ExtendedTopology&,
                                                   const WeightVector&,
                                                   const AggregatedTM&,
                                                   TieBreak);
template LoadMap<Rational> SimulateHotPotato<Rational>(const ExtendedTopology&,
                                                       const WeightVector&,
                                                       const AggregatedTM&,
                                                       TieBreak);

}  // namespace hplwo
