#include "hplwo/igp.h"

#include <algorithm>
#include <map>
#include <queue>

#include "hplwo/error.h"

namespace hplwo {

DistanceMap ShortestDistances(const Graph& graph, const WeightVector& w,
                              NodeIndex dst) {
  if (dst >= graph.num_nodes()) {
    throw InputError("unknown destination index " + std::to_string(dst));
  }
  DistanceMap out;
  out.destination = dst;
  out.distance.assign(graph.num_nodes(), kUnreachable);
  out.distance[dst] = 0;

  using Entry = std::pair<int64_t, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({0, dst});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != out.distance[v]) continue;
    for (ArcIndex a : graph.InArcs(v)) {
      NodeIndex u = graph.arc(a).src;
      int64_t candidate = d + w[a];
      if (candidate < out.distance[u]) {
        out.distance[u] = candidate;
        heap.push({candidate, u});
      }
    }
  }
  return out;
}

std::vector<ArcIndex> EcmpDag::Arcs() const {
  std::vector<ArcIndex> out;
  for (ArcIndex a = 0; a < member.size(); ++a) {
    if (member[a]) out.push_back(a);
  }
  return out;
}

EcmpDag BuildEcmpDag(const Graph& graph, const WeightVector& w,
                     const DistanceMap& dist) {
  EcmpDag dag;
  dag.destination = dist.destination;
  dag.member.assign(graph.num_arcs(), false);
  dag.out_degree.assign(graph.num_nodes(), 0);

  std::vector<uint32_t> in_degree(graph.num_nodes(), 0);
  for (ArcIndex a = 0; a < graph.num_arcs(); ++a) {
    const Arc& arc = graph.arc(a);
    if (arc.src == dist.destination) continue;
    if (!dist.Reachable(arc.src) || !dist.Reachable(arc.dst)) continue;
    if (dist.distance[arc.src] == w[a] + dist.distance[arc.dst]) {
      dag.member[a] = true;
      ++dag.out_degree[arc.src];
      ++in_degree[arc.dst];
    }
  }

  // Kahn's algorithm; zero-weight arcs make distance alone an ambiguous
  // order. Ties resolve by node index so the order is reproducible.
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (NodeIndex n = 0; n < graph.num_nodes(); ++n) {
    if (dist.Reachable(n) && in_degree[n] == 0) ready.push(n);
  }
  while (!ready.empty()) {
    NodeIndex u = ready.top();
    ready.pop();
    dag.order.push_back(u);
    for (ArcIndex a : graph.OutArcs(u)) {
      if (!dag.member[a]) continue;
      if (--in_degree[graph.arc(a).dst] == 0) ready.push(graph.arc(a).dst);
    }
  }
  size_t reachable = static_cast<size_t>(
      std::count_if(dist.distance.begin(), dist.distance.end(),
                    [](int64_t d) { return d != kUnreachable; }));
  if (dag.order.size() != reachable) {
    throw InternalError("shortest-path DAG contains a cycle");
  }
  return dag;
}

template <typename T>
void RouteToDestination(const Graph& graph, const EcmpDag& dag,
                        std::span<const std::pair<NodeIndex, T>> sources,
                        LoadMap<T>* loads) {
  std::vector<T> at_node(graph.num_nodes(), T(0));
  for (const auto& [src, volume] : sources) {
    if (src != dag.destination && dag.out_degree[src] == 0) {
      throw UnreachableError(graph.node(src).id,
                             graph.node(dag.destination).id);
    }
    at_node[src] += volume;
  }
  for (NodeIndex u : dag.order) {
    if (u == dag.destination || dag.out_degree[u] == 0) continue;
    const T& here = at_node[u];
    if (here == T(0)) continue;
    T share = here / T(dag.out_degree[u]);
    for (ArcIndex a : graph.OutArcs(u)) {
      if (!dag.member[a]) continue;
      loads->load[a] += share;
      at_node[graph.arc(a).dst] += share;
    }
  }
}

template <typename T>
LoadMap<T> RouteDemand(const Graph& graph, const WeightVector& w,
                       NodeIndex src, NodeIndex dst, const T& volume) {
  DistanceMap dist = ShortestDistances(graph, w, dst);
  if (!dist.Reachable(src)) {
    throw UnreachableError(graph.node(src).id, graph.node(dst).id);
  }
  EcmpDag dag = BuildEcmpDag(graph, w, dist);
  LoadMap<T> loads(graph.num_arcs());
  std::pair<NodeIndex, T> demand{src, volume};
  RouteToDestination<T>(graph, dag, std::span(&demand, 1), &loads);
  return loads;
}

namespace {

NodeIndex IntraNode(const Graph& g, const std::string& id) {
  NodeIndex n = g.NodeOrThrow(id);
  if (g.node(n).kind != NodeKind::kIntra) {
    throw InputError("'" + id + "' is not an intradomain router");
  }
  return n;
}

NodeIndex AggregateNodeOrThrow(const ExtendedTopology& xt,
                               const std::string& aggregate) {
  std::optional<NodeIndex> n = xt.AggregateNode(aggregate);
  if (!n) throw InputError("unknown aggregate '" + aggregate + "'");
  return *n;
}

}  // namespace

template <typename T>
DemandPlan<T> MakeDemandPlan(const ExtendedTopology& xt,
                             const AggregatedTM& tm) {
  const Graph& g = xt.graph();
  std::map<NodeIndex, std::vector<std::pair<NodeIndex, T>>> groups;
  for (const auto& [key, volume] : tm.invar) {
    NodeIndex s = IntraNode(g, key.first);
    NodeIndex t = IntraNode(g, key.second);
    if (s == t) continue;  // exits locally, no intra load
    groups[t].emplace_back(s, FromRational<T>(volume));
  }
  for (const auto& [key, volume] : tm.hp) {
    NodeIndex s = IntraNode(g, key.first);
    NodeIndex p = AggregateNodeOrThrow(xt, key.second);
    groups[p].emplace_back(s, FromRational<T>(volume));
  }
  DemandPlan<T> plan;
  for (auto& [dst, sources] : groups) {
    plan.by_destination.emplace_back(dst, std::move(sources));
  }
  for (const auto& [peering, volume] : tm.exits) {
    if (xt.FindPeering(peering) == nullptr) {
      throw InputError("exit volume on undeclared peering '" + peering + "'");
    }
    if (std::optional<ArcIndex> a = xt.PeeringArc(peering)) {
      plan.fixed.emplace_back(*a, FromRational<T>(volume));
    }
  }
  return plan;
}

template <typename T>
LoadMap<T> ComputeLoads(const Graph& graph, const WeightVector& w,
                        const DemandPlan<T>& plan) {
  LoadMap<T> loads(graph.num_arcs());
  for (const auto& [dst, sources] : plan.by_destination) {
    DistanceMap dist = ShortestDistances(graph, w, dst);
    EcmpDag dag = BuildEcmpDag(graph, w, dist);
    RouteToDestination<T>(graph, dag, sources, &loads);
  }
  for (const auto& [arc, volume] : plan.fixed) loads.load[arc] += volume;
  return loads;
}

template <typename T>
LoadMap<T> ComputeLoads(const ExtendedTopology& xt, const WeightVector& w,
                        const AggregatedTM& tm) {
  return ComputeLoads<T>(xt.graph(), w, MakeDemandPlan<T>(xt, tm));
}

void CheckRoutable(const ExtendedTopology& xt, const AggregatedTM& tm) {
  const Graph& g = xt.graph();
  WeightVector unit(std::vector<int32_t>(xt.num_intra_arcs(), 1));
  for (const auto& [dst, sources] :
       MakeDemandPlan<Rational>(xt, tm).by_destination) {
    DistanceMap dist = ShortestDistances(g, unit, dst);
    for (const auto& [src, volume] : sources) {
      if (!dist.Reachable(src)) {
        throw UnreachableError(g.node(src).id, g.node(dst).id);
      }
    }
  }
}

template <typename T>
std::vector<T> Utilizations(const LoadMap<T>& loads, const Graph& graph) {
  std::vector<T> out(graph.num_arcs(), T(0));
  for (ArcIndex a = 0; a < graph.num_arcs(); ++a) {
    const Arc& arc = graph.arc(a);
    if (arc.kind == ArcKind::kVirtual || !arc.capacity) continue;
    out[a] = loads.load[a] / FromRational<T>(*arc.capacity);
  }
  return out;
}

template <typename T>
T UMax(const LoadMap<T>& loads, const Graph& graph, ArcClasses classes) {
  T best(0);
  for (ArcIndex a = 0; a < graph.num_arcs(); ++a) {
    const Arc& arc = graph.arc(a);
    bool selected = (arc.kind == ArcKind::kIntra && classes.intra) ||
                    (arc.kind == ArcKind::kInter && classes.inter);
    if (!selected || !arc.capacity) continue;
    T u = loads.load[a] / FromRational<T>(*arc.capacity);
    if (u > best) best = u;
  }
  return best;
}

template void RouteToDestination<double>(
    const Graph&, const EcmpDag&, std::span<const std::pair<NodeIndex, double>>,
    LoadMap<double>*);
template void RouteToDestination<Rational>(
    const Graph&, const EcmpDag&,
    std::span<const std::pair<NodeIndex, Rational>>, LoadMap<Rational>*);
template LoadMap<double> RouteDemand<double>(const Graph&, const WeightVector&,
                                             NodeIndex, NodeIndex,
                                             const double&);
template LoadMap<Rational> RouteDemand<Rational>(const Graph&,
                                                 const WeightVector&,
                                                 NodeIndex, NodeIndex,
                                                 const Rational&);
template LoadMap<double> ComputeLoads<double>(const ExtendedTopology&,
                                              const WeightVector&,
                                              const AggregatedTM&);
template LoadMap<Rational> ComputeLoads<Rational>(const ExtendedTopology&,
                                                  const WeightVector&,
                                                  const AggregatedTM&);
template DemandPlan<double> MakeDemandPlan<double>(const ExtendedTopology&,
                                                   const AggregatedTM&);
template DemandPlan<Rational> MakeDemandPlan<Rational>(const ExtendedTopology&,
                                                       const AggregatedTM&);
template LoadMap<double> ComputeLoads<double>(const Graph&, const WeightVector&,
                                              const DemandPlan<double>&);
template LoadMap<Rational> ComputeLoads<Rational>(const Graph&,
                                                  const WeightVector&,
                                                  const DemandPlan<Rational>&);
template std::vector<double> Utilizations<double>(const LoadMap<double>&,
                                                  const Graph&);
template std::vector<Rational> Utilizations<Rational>(const LoadMap<Rational>&,
                                                      const Graph&);
template double UMax<double>(const LoadMap<double>&, const Graph&, ArcClasses);
template Rational UMax<Rational>(const LoadMap<Rational>&, const Graph&,
                                 ArcClasses);

}  // namespace hplwo
