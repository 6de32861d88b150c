#include "hplwo/net_model.h"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>

#include "hplwo/error.h"
#include "line_reader.h"

namespace hplwo {

const char* ToString(NodeKind kind) {
  switch (kind) {
    case NodeKind::kIntra:
      return "intra";
    case NodeKind::kNeighbor:
      return "neighbor";
    case NodeKind::kVirtual:
      return "virtual";
  }
  return "?";
}

const char* ToString(ArcKind kind) {
  switch (kind) {
    case ArcKind::kIntra:
      return "intra";
    case ArcKind::kInter:
      return "inter";
    case ArcKind::kVirtual:
      return "virtual";
  }
  return "?";
}

NodeIndex Graph::AddNode(std::string id, NodeKind kind) {
  NodeIndex index = static_cast<NodeIndex>(nodes_.size());
  auto [it, inserted] = index_.emplace(id, index);
  if (!inserted) throw InputError("duplicate node id '" + id + "'");
  nodes_.push_back({std::move(id), kind});
  out_.emplace_back();
  in_.emplace_back();
  return index;
}

ArcIndex Graph::AddArc(Arc arc) {
  if (arc.src >= nodes_.size() || arc.dst >= nodes_.size()) {
    throw InternalError("arc endpoint out of range");
  }
  ArcIndex index = static_cast<ArcIndex>(arcs_.size());
  out_[arc.src].push_back(index);
  in_[arc.dst].push_back(index);
  arcs_.push_back(std::move(arc));
  return index;
}

std::optional<NodeIndex> Graph::FindNode(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Graph::NodeOrThrow(std::string_view id) const {
  std::optional<NodeIndex> n = FindNode(id);
  if (!n) throw InputError("unknown node '" + std::string(id) + "'");
  return *n;
}

TopologySpec ParseTopology(std::istream& in, const std::string& source) {
  TopologySpec spec;
  LineReader reader(in, source);
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f[0] == "node") {
      reader.ExpectFields(f, 3);
      if (f[2] != "intra") reader.Fail("only intra nodes may be declared");
      spec.nodes.push_back(f[1]);
    } else if (f[0] == "link") {
      reader.ExpectFields(f, 6);
      long long weight = reader.Integer(f[5]);
      if (weight < 1 || weight > INT32_MAX) {
        reader.Fail("link weight must be a positive integer");
      }
      spec.links.push_back({f[1], f[2], f[3], reader.Number(f[4]),
                            static_cast<int32_t>(weight)});
    } else if (f[0] == "peering") {
      reader.ExpectFields(f, 5);
      spec.peerings.push_back({f[1], f[2], f[3], reader.Number(f[4])});
    } else {
      reader.Fail("unknown record '" + f[0] + "'");
    }
  }
  return spec;
}

void WriteTopology(std::ostream& out, const TopologySpec& spec) {
  for (const std::string& n : spec.nodes) out << "node " << n << " intra\n";
  for (const LinkSpec& l : spec.links) {
    out << "link " << l.id << ' ' << l.a << ' ' << l.b << ' '
        << FormatRational(l.capacity) << ' ' << l.weight << '\n';
  }
  for (const PeeringSpec& p : spec.peerings) {
    out << "peering " << p.id << ' ' << p.egress << ' ' << p.neighbor << ' '
        << FormatRational(p.capacity) << '\n';
  }
}

WeightVector Topology::FileWeights() const {
  std::vector<int32_t> w(graph_.num_arcs());
  for (size_t i = 0; i < w.size(); ++i) w[i] = graph_.arc(i).weight;
  return WeightVector(std::move(w));
}

Topology BuildTopology(const TopologySpec& spec) {
  Topology t;
  for (const std::string& n : spec.nodes) t.graph_.AddNode(n, NodeKind::kIntra);

  std::set<std::string> link_ids;
  for (const LinkSpec& l : spec.links) {
    if (!link_ids.insert(l.id).second) {
      throw InputError("duplicate link id '" + l.id + "'");
    }
    std::optional<NodeIndex> a = t.graph_.FindNode(l.a);
    std::optional<NodeIndex> b = t.graph_.FindNode(l.b);
    if (!a || !b) {
      throw InputError("link '" + l.id + "' has unknown endpoint '" +
                       (a ? l.b : l.a) + "'");
    }
    if (*a == *b) throw InputError("link '" + l.id + "' is a self-loop");
    if (l.capacity <= 0) {
      throw InputError("link '" + l.id + "' has non-positive capacity");
    }
    if (l.weight < 1) {
      throw InputError("link '" + l.id + "' has weight below 1");
    }
    t.graph_.AddArc({*a, *b, ArcKind::kIntra, l.capacity, l.weight, l.id});
    t.graph_.AddArc({*b, *a, ArcKind::kIntra, l.capacity, l.weight, l.id});
    t.links_.push_back(l);
  }

  // Connectivity over intra nodes (links are bidirectional).
  const Graph& g = t.graph_;
  if (g.num_nodes() > 1) {
    std::vector<bool> seen(g.num_nodes(), false);
    std::deque<NodeIndex> queue{0};
    seen[0] = true;
    size_t reached = 1;
    while (!queue.empty()) {
      NodeIndex u = queue.front();
      queue.pop_front();
      for (ArcIndex a : g.OutArcs(u)) {
        NodeIndex v = g.arc(a).dst;
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          queue.push_back(v);
        }
      }
    }
    if (reached != g.num_nodes()) {
      for (NodeIndex n = 0; n < g.num_nodes(); ++n) {
        if (!seen[n]) {
          throw InputError("topology is disconnected: node '" +
                           g.node(n).id + "' unreachable from '" +
                           g.node(0).id + "'");
        }
      }
    }
  }
  return t;
}

namespace {

// Intra arcs keep their indices so weight vectors transfer unchanged.
Graph CopyIntra(const Topology& t) {
  Graph g;
  for (const Node& n : t.graph().nodes()) g.AddNode(n.id, n.kind);
  for (const Arc& a : t.graph().arcs()) g.AddArc(a);
  return g;
}

// Neighbor nodes are keyed by peering link. The neighbor id is used as node
// id when it is unambiguous, "<neighbor>/<peering>" otherwise.
std::vector<std::string> NeighborNodeIds(
    const Topology& t, const std::vector<PeeringSpec>& peerings) {
  std::map<std::string, int> uses;
  for (const PeeringSpec& p : peerings) ++uses[p.neighbor];
  std::vector<std::string> ids;
  for (const PeeringSpec& p : peerings) {
    bool clash = uses[p.neighbor] > 1 || t.graph().FindNode(p.neighbor);
    ids.push_back(clash ? p.neighbor + "/" + p.id : p.neighbor);
  }
  return ids;
}

}  // namespace

std::optional<NodeIndex> ExtendedTopology::AggregateNode(
    const std::string& aggregate) const {
  auto it = aggregate_node_.find(aggregate);
  if (it == aggregate_node_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcIndex> ExtendedTopology::PeeringArc(
    const std::string& peering) const {
  auto it = peering_arc_.find(peering);
  if (it == peering_arc_.end()) return std::nullopt;
  return it->second;
}

const PeeringSpec* ExtendedTopology::FindPeering(
    const std::string& peering) const {
  for (const PeeringSpec& p : peerings_) {
    if (p.id == peering) return &p;
  }
  return nullptr;
}

ExtendedTopology ExtendTopology(const Topology& topology,
                                const std::vector<PeeringSpec>& peerings,
                                const std::vector<EgressAggregate>& aggregates) {
  ExtendedTopology xt;
  xt.base_ = topology;
  xt.graph_ = CopyIntra(topology);
  xt.peerings_ = peerings;
  xt.aggregates_ = aggregates;

  std::vector<std::string> neighbor_ids = NeighborNodeIds(topology, peerings);
  std::map<std::string, NodeIndex> neighbor_of_peering;
  for (size_t i = 0; i < peerings.size(); ++i) {
    const PeeringSpec& p = peerings[i];
    if (neighbor_of_peering.count(p.id)) {
      throw InputError("duplicate peering id '" + p.id + "'");
    }
    std::optional<NodeIndex> egress = xt.graph_.FindNode(p.egress);
    if (!egress || xt.graph_.node(*egress).kind != NodeKind::kIntra) {
      throw InputError("peering '" + p.id + "' has unknown egress router '" +
                       p.egress + "'");
    }
    if (p.capacity <= 0) {
      throw InputError("peering '" + p.id + "' has non-positive capacity");
    }
    NodeIndex neighbor = xt.graph_.AddNode(neighbor_ids[i], NodeKind::kNeighbor);
    neighbor_of_peering[p.id] = neighbor;
    xt.peering_arc_[p.id] =
        xt.graph_.AddArc({*egress, neighbor, ArcKind::kInter, p.capacity, 0,
                          p.id});
  }

  for (const EgressAggregate& agg : aggregates) {
    if (agg.egress_set.empty()) {
      throw InputError("aggregate '" + agg.id + "' has an empty egress set");
    }
    for (const EgressPoint& e : agg.egress_set) {
      const PeeringSpec* p = xt.FindPeering(e.peering);
      if (p == nullptr) {
        throw InputError("aggregate '" + agg.id +
                         "' references undeclared peering '" + e.peering + "'");
      }
      if (p->egress != e.router) {
        throw InputError("aggregate '" + agg.id + "' pairs peering '" +
                         e.peering + "' with router '" + e.router +
                         "' but it is attached to '" + p->egress + "'");
      }
    }
    if (xt.aggregate_node_.count(agg.id)) {
      throw InputError("duplicate aggregate id '" + agg.id + "'");
    }
    NodeIndex v = xt.graph_.AddNode(agg.id, NodeKind::kVirtual);
    xt.aggregate_node_[agg.id] = v;
    for (const EgressPoint& e : agg.egress_set) {
      xt.graph_.AddArc({neighbor_of_peering.at(e.peering), v,
                        ArcKind::kVirtual, std::nullopt, 0, ""});
    }
  }
  return xt;
}

ExtendedTopology SimplifyModel(const ExtendedTopology& xt) {
  ExtendedTopology out;
  out.base_ = xt.base_;
  out.graph_ = CopyIntra(xt.base_);
  out.peerings_ = xt.peerings_;
  out.aggregates_ = xt.aggregates_;
  out.simplified_ = true;
  for (const EgressAggregate& agg : xt.aggregates_) {
    NodeIndex v = out.graph_.AddNode(agg.id, NodeKind::kVirtual);
    out.aggregate_node_[agg.id] = v;
    // One arc per distinct router: several peerings at one router all sit at
    // distance 0 from the virtual node and carry no intra load.
    std::set<std::string> routers;
    for (const EgressPoint& e : agg.egress_set) routers.insert(e.router);
    for (const std::string& r : routers) {
      out.graph_.AddArc({out.graph_.NodeOrThrow(r), v, ArcKind::kVirtual,
                         std::nullopt, 0, ""});
    }
  }
  return out;
}

void CheckInvariants(const ExtendedTopology& xt) {
  const Graph& g = xt.graph();
  auto fail = [](const std::string& what) { throw InternalError(what); };
  for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    NodeKind s = g.node(arc.src).kind;
    NodeKind d = g.node(arc.dst).kind;
    ArcKind expected = ArcKind::kIntra;
    if (s == NodeKind::kIntra && d == NodeKind::kIntra) {
      expected = ArcKind::kIntra;
    } else if (s == NodeKind::kIntra && d == NodeKind::kNeighbor) {
      expected = ArcKind::kInter;
    } else if (d == NodeKind::kVirtual &&
               (s == NodeKind::kNeighbor ||
                (s == NodeKind::kIntra && xt.simplified()))) {
      expected = ArcKind::kVirtual;
    } else {
      fail("arc " + g.node(arc.src).id + "->" + g.node(arc.dst).id +
           " joins illegal endpoint kinds");
    }
    if (arc.kind != expected) {
      fail("arc " + g.node(arc.src).id + "->" + g.node(arc.dst).id +
           " has kind " + ToString(arc.kind) + ", expected " +
           ToString(expected));
    }
    if (arc.kind == ArcKind::kVirtual && (arc.capacity || arc.weight != 0)) {
      fail("virtual arc must be unbounded with weight 0");
    }
    if (arc.kind == ArcKind::kInter && arc.weight != 0) {
      fail("inter arc weight must be 0");
    }
    if (arc.kind != ArcKind::kVirtual && (!arc.capacity || *arc.capacity <= 0)) {
      fail("intra/inter arc needs a positive capacity");
    }
    if (arc.kind == ArcKind::kIntra && a >= xt.num_intra_arcs()) {
      fail("intra arc outside the base index range");
    }
  }
}

std::pair<TopologySpec, AggregatedTM> ScaleInstance(
    const TopologySpec& spec, const AggregatedTM& tm,
    const std::map<Rational, Rational>& capacity_map,
    const Rational& demand_factor) {
  if (demand_factor <= 0) throw ConfigError("demand factor must be positive");
  for (const auto& [from, to] : capacity_map) {
    if (to <= 0) throw ConfigError("capacity map target must be positive");
  }
  auto map_capacity = [&](const Rational& c) {
    auto it = capacity_map.find(c);
    return it == capacity_map.end() ? c : it->second;
  };
  TopologySpec scaled = spec;
  for (LinkSpec& l : scaled.links) l.capacity = map_capacity(l.capacity);
  for (PeeringSpec& p : scaled.peerings) p.capacity = map_capacity(p.capacity);

  AggregatedTM out = tm;
  for (auto& [key, v] : out.invar) v *= demand_factor;
  for (auto& [key, v] : out.hp) v *= demand_factor;
  for (auto& [key, v] : out.exits) v *= demand_factor;
  for (EgressAggregate& a : out.aggregates) a.attracted_volume *= demand_factor;
  return {std::move(scaled), std::move(out)};
}

}  // namespace hplwo
