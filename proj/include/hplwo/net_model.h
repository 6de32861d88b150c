#ifndef HPLWO_NET_MODEL_H
#define HPLWO_NET_MODEL_H

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hplwo/rational.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

using NodeIndex = uint32_t;
using ArcIndex = uint32_t;

enum class NodeKind { kIntra, kNeighbor, kVirtual };
enum class ArcKind { kIntra, kInter, kVirtual };

const char* ToString(NodeKind kind);
const char* ToString(ArcKind kind);

struct Node {
  std::string id;
  NodeKind kind;
};

struct Arc {
  NodeIndex src;
  NodeIndex dst;
  ArcKind kind;
  // Unset means unbounded (virtual arcs only).
  std::optional<Rational> capacity;
  // Weight taken from the topology file; always 0 for inter and virtual arcs.
  int32_t weight = 0;
  // Intra: bidirectional link id. Inter: peering id. Virtual: empty.
  std::string link_id;
};

// Directed multigraph with per-node in/out adjacency.
class Graph {
 public:
  NodeIndex AddNode(std::string id, NodeKind kind);
  ArcIndex AddArc(Arc arc);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Node& node(NodeIndex i) const { return nodes_[i]; }
  const Arc& arc(ArcIndex i) const { return arcs_[i]; }
  size_t num_nodes() const { return nodes_.size(); }
  size_t num_arcs() const { return arcs_.size(); }

  std::span<const ArcIndex> OutArcs(NodeIndex n) const { return out_[n]; }
  std::span<const ArcIndex> InArcs(NodeIndex n) const { return in_[n]; }

  std::optional<NodeIndex> FindNode(std::string_view id) const;
  // Throws InputError naming the id.
  NodeIndex NodeOrThrow(std::string_view id) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> out_;
  std::vector<std::vector<ArcIndex>> in_;
  std::unordered_map<std::string, NodeIndex> index_;
};

// Parsed topology file.
struct LinkSpec {
  std::string id;
  std::string a;
  std::string b;
  Rational capacity;
  int32_t weight = 1;
};

struct PeeringSpec {
  std::string id;
  std::string egress;
  std::string neighbor;
  Rational capacity;
};

struct TopologySpec {
  std::vector<std::string> nodes;
  std::vector<LinkSpec> links;
  std::vector<PeeringSpec> peerings;
};

TopologySpec ParseTopology(std::istream& in, const std::string& source);
void WriteTopology(std::ostream& out, const TopologySpec& spec);

// Per-arc IGP weights. Only intra arcs carry weights; every other arc is
// frozen at 0. Intra arcs share indices between a Topology and any
// ExtendedTopology built from it.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<int32_t> intra_weights)
      : weights_(std::move(intra_weights)) {}

  int32_t operator[](ArcIndex arc) const {
    return arc < weights_.size() ? weights_[arc] : 0;
  }
  void Set(ArcIndex arc, int32_t weight) { weights_.at(arc) = weight; }
  size_t size() const { return weights_.size(); }
  const std::vector<int32_t>& values() const { return weights_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<int32_t> weights_;
};

// The intradomain graph. Each bidirectional link becomes two arcs; link i
// owns arcs 2i (a->b) and 2i+1 (b->a).
class Topology {
 public:
  const Graph& graph() const { return graph_; }
  const std::vector<LinkSpec>& links() const { return links_; }
  std::pair<ArcIndex, ArcIndex> LinkArcs(size_t link) const {
    return {static_cast<ArcIndex>(2 * link),
            static_cast<ArcIndex>(2 * link + 1)};
  }
  size_t num_intra_arcs() const { return graph_.num_arcs(); }

  // Weights as written in the topology file.
  WeightVector FileWeights() const;

 private:
  friend Topology BuildTopology(const TopologySpec& spec);

  Graph graph_;
  std::vector<LinkSpec> links_;
};

// Validates and expands a parsed topology. Throws InputError on duplicate
// ids, unknown endpoints, self-loops, non-positive capacities, weights below
// 1, or a disconnected node set.
Topology BuildTopology(const TopologySpec& spec);

// Intradomain topology plus neighbor nodes (one per peering link), directed
// inter arcs, one virtual node per egress aggregate and zero-weight virtual
// arcs into it.
class ExtendedTopology {
 public:
  const Graph& graph() const { return graph_; }
  const Topology& base() const { return base_; }
  const std::vector<PeeringSpec>& peerings() const { return peerings_; }
  const std::vector<EgressAggregate>& aggregates() const { return aggregates_; }
  bool simplified() const { return simplified_; }
  size_t num_intra_arcs() const { return base_.num_intra_arcs(); }
  bool HasInterArcs() const { return !peering_arc_.empty(); }

  std::optional<NodeIndex> AggregateNode(const std::string& aggregate) const;
  std::optional<ArcIndex> PeeringArc(const std::string& peering) const;
  const PeeringSpec* FindPeering(const std::string& peering) const;

 private:
  friend ExtendedTopology ExtendTopology(
      const Topology&, const std::vector<PeeringSpec>&,
      const std::vector<EgressAggregate>&);
  friend ExtendedTopology SimplifyModel(const ExtendedTopology&);

  Graph graph_;
  Topology base_;
  std::vector<PeeringSpec> peerings_;
  std::vector<EgressAggregate> aggregates_;
  std::map<std::string, NodeIndex> aggregate_node_;
  std::map<std::string, ArcIndex> peering_arc_;
  bool simplified_ = false;
};

// Throws InputError when a peering names an unknown or non-intra egress
// router, or an aggregate references an undeclared peering (or a peering
// whose egress router differs from the one given).
ExtendedTopology ExtendTopology(const Topology& topology,
                                const std::vector<PeeringSpec>& peerings,
                                const std::vector<EgressAggregate>& aggregates);

// Drops neighbor nodes and inter arcs; each virtual node is attached directly
// to its candidate egress routers. Intra-arc loads are unchanged for every
// weight vector. Only meaningful when interdomain links are not in the
// objective.
ExtendedTopology SimplifyModel(const ExtendedTopology& xt);

// Arc kinds match endpoint kinds, nothing leaves a virtual node, neighbor
// nodes only feed virtual nodes. Throws InternalError on violation.
void CheckInvariants(const ExtendedTopology& xt);

// Maps capacities through capacity_map (identity where unmapped) and
// multiplies every TM cell by demand_factor. Throws ConfigError when the
// factor is not positive.
std::pair<TopologySpec, AggregatedTM> ScaleInstance(
    const TopologySpec& spec, const AggregatedTM& tm,
    const std::map<Rational, Rational>& capacity_map,
    const Rational& demand_factor);

}  // namespace hplwo

#endif  // HPLWO_NET_MODEL_H
