#ifndef HPLWO_IGP_H
#define HPLWO_IGP_H

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hplwo/net_model.h"
#include "hplwo/rational.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

inline constexpr int64_t kUnreachable = std::numeric_limits<int64_t>::max();

// Shortest IGP distance from every node to one destination.
struct DistanceMap {
  NodeIndex destination = 0;
  std::vector<int64_t> distance;

  bool Reachable(NodeIndex n) const { return distance[n] != kUnreachable; }
};

// Reverse Dijkstra over integer weights. Nodes that cannot reach dst keep
// kUnreachable. Throws InputError on an out-of-range destination.
DistanceMap ShortestDistances(const Graph& graph, const WeightVector& w,
                              NodeIndex dst);

// Arcs lying on at least one shortest path to the destination.
struct EcmpDag {
  NodeIndex destination = 0;
  std::vector<bool> member;            // per arc
  std::vector<uint32_t> out_degree;    // per node, counted on the DAG
  std::vector<NodeIndex> order;        // upstream before downstream

  std::vector<ArcIndex> Arcs() const;
};

EcmpDag BuildEcmpDag(const Graph& graph, const WeightVector& w,
                     const DistanceMap& dist);

// Per-arc traffic in Mbps.
template <typename T>
struct LoadMap {
  std::vector<T> load;

  LoadMap() = default;
  explicit LoadMap(size_t arcs) : load(arcs, T(0)) {}

  LoadMap& operator+=(const LoadMap& other) {
    for (size_t i = 0; i < load.size(); ++i) load[i] += other.load[i];
    return *this;
  }
  bool operator==(const LoadMap&) const = default;
};

// Pushes the given source volumes down the DAG toward its destination,
// splitting the volume at each node evenly across its DAG out-arcs, and adds
// the result into loads. Throws UnreachableError for a source off the DAG.
template <typename T>
void RouteToDestination(const Graph& graph, const EcmpDag& dag,
                        std::span<const std::pair<NodeIndex, T>> sources,
                        LoadMap<T>* loads);

template <typename T>
LoadMap<T> RouteDemand(const Graph& graph, const WeightVector& w,
                       NodeIndex src, NodeIndex dst, const T& volume);

// Routes every TM cell on the (extended) topology: invar cells to their
// egress router, hp cells to their aggregate's virtual node. Fixed exit
// volumes are added onto the matching inter arcs when the topology has them.
template <typename T>
LoadMap<T> ComputeLoads(const ExtendedTopology& xt, const WeightVector& w,
                        const AggregatedTM& tm);

// TM cells resolved to node indices and grouped by destination, plus the
// fixed per-arc exit volumes. Built once per (topology, TM) and reused for
// every weight vector the optimizer evaluates.
template <typename T>
struct DemandPlan {
  std::vector<std::pair<NodeIndex, std::vector<std::pair<NodeIndex, T>>>>
      by_destination;
  std::vector<std::pair<ArcIndex, T>> fixed;
};

template <typename T>
DemandPlan<T> MakeDemandPlan(const ExtendedTopology& xt,
                             const AggregatedTM& tm);

template <typename T>
LoadMap<T> ComputeLoads(const Graph& graph, const WeightVector& w,
                        const DemandPlan<T>& plan);

// Every (source, destination) pair in the TM must have a path; weights do
// not change reachability. Throws UnreachableError naming the first
// offending pair and InputError for unknown endpoints.
void CheckRoutable(const ExtendedTopology& xt, const AggregatedTM& tm);

struct ArcClasses {
  bool intra = true;
  bool inter = false;
};
inline constexpr ArcClasses kIntraArcs{true, false};
inline constexpr ArcClasses kInterArcs{false, true};
inline constexpr ArcClasses kIntraAndInterArcs{true, true};

// u = load / capacity; virtual arcs report 0.
template <typename T>
std::vector<T> Utilizations(const LoadMap<T>& loads, const Graph& graph);

// Maximum utilization over the selected arc classes (virtual never counts);
// 0 when no arc matches.
template <typename T>
T UMax(const LoadMap<T>& loads, const Graph& graph, ArcClasses classes);

extern template void RouteToDestination<double>(
    const Graph&, const EcmpDag&, std::span<const std::pair<NodeIndex, double>>,
    LoadMap<double>*);
extern template void RouteToDestination<Rational>(
    const Graph&, const EcmpDag&,
    std::span<const std::pair<NodeIndex, Rational>>, LoadMap<Rational>*);
extern template LoadMap<double> RouteDemand<double>(const Graph&,
                                                    const WeightVector&,
                                                    NodeIndex, NodeIndex,
                                                    const double&);
extern template LoadMap<Rational> RouteDemand<Rational>(const Graph&,
                                                        const WeightVector&,
                                                        NodeIndex, NodeIndex,
                                                        const Rational&);
extern template LoadMap<double> ComputeLoads<double>(const ExtendedTopology&,
                                                     const WeightVector&,
                                                     const AggregatedTM&);
extern template LoadMap<Rational> ComputeLoads<Rational>(
    const ExtendedTopology&, const WeightVector&, const AggregatedTM&);
extern template DemandPlan<double> MakeDemandPlan<double>(
    const ExtendedTopology&, const AggregatedTM&);
extern template DemandPlan<Rational> MakeDemandPlan<Rational>(
    const ExtendedTopology&, const AggregatedTM&);
extern template LoadMap<double> ComputeLoads<double>(const Graph&,
                                                     const WeightVector&,
                                                     const DemandPlan<double>&);
extern template LoadMap<Rational> ComputeLoads<Rational>(
    const Graph&, const WeightVector&, const DemandPlan<Rational>&);
extern template std::vector<double> Utilizations<double>(
    const LoadMap<double>&, const Graph&);
extern template std::vector<Rational> Utilizations<Rational>(
    const LoadMap<Rational>&, const Graph&);
extern template double UMax<double>(const LoadMap<double>&, const Graph&,
                                    ArcClasses);
extern template Rational UMax<Rational>(const LoadMap<Rational>&,
                                        const Graph&, ArcClasses);

}  // namespace hplwo

#endif  // HPLWO_IGP_H
