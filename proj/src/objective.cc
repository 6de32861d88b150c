#include "hplwo/objective.h"

#include <sstream>

#include "hplwo/error.h"

namespace hplwo {

std::vector<CostSegment> CostParams::DefaultSegments() {
  return {{Rational(0), Rational(1)},         {Rational(1, 3), Rational(3)},
          {Rational(2, 3), Rational(10)},     {Rational(9, 10), Rational(70)},
          {Rational(1), Rational(500)},       {Rational(11, 10), Rational(5000)}};
}

void CostParams::Validate() const {
  if (segments.empty()) throw ConfigError("cost function has no segments");
  if (segments[0].threshold != 0) {
    throw ConfigError("first cost breakpoint must be at utilization 0");
  }
  if (segments[0].slope <= 0) throw ConfigError("cost slopes must be positive");
  for (size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].threshold <= segments[i - 1].threshold) {
      throw ConfigError("cost breakpoints must be strictly increasing");
    }
    if (segments[i].slope <= segments[i - 1].slope) {
      throw ConfigError("cost slopes must be strictly increasing");
    }
  }
  if (alpha < 0) throw ConfigError("alpha must be non-negative");
}

std::string CostParams::FormatSegments() const {
  std::string out;
  for (const CostSegment& s : segments) {
    if (!out.empty()) out += ',';
    out += FormatRational(s.threshold) + ":" + FormatRational(s.slope);
  }
  return out;
}

std::vector<CostSegment> CostParams::ParseSegments(const std::string& text) {
  std::vector<CostSegment> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("bad cost segment '" + item + "'");
    }
    try {
      out.push_back({ParseRational(item.substr(0, colon)),
                     ParseRational(item.substr(colon + 1))});
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad cost segment '" + item + "'");
    }
  }
  return out;
}

template <typename T>
LinkCost<T>::LinkCost(const CostParams& params) {
  for (const CostSegment& s : params.segments) {
    thresholds_.push_back(FromRational<T>(s.threshold));
    slopes_.push_back(FromRational<T>(s.slope));
  }
}

template <typename T>
T LinkCost<T>::operator()(const T& load, const T& capacity) const {
  T cost(0);
  for (size_t i = 0; i < slopes_.size(); ++i) {
    T lo = thresholds_[i] * capacity;
    if (load <= lo) break;
    T hi = load;
    if (i + 1 < thresholds_.size()) {
      T next = thresholds_[i + 1] * capacity;
      if (next < hi) hi = next;
    }
    cost += slopes_[i] * (hi - lo);
  }
  return cost;
}

template <typename T>
T PhiTotal(const LoadMap<T>& loads, const Graph& graph, const LinkCost<T>& cost,
           const T& alpha) {
  T intra(0);
  T inter(0);
  for (ArcIndex a = 0; a < graph.num_arcs(); ++a) {
    const Arc& arc = graph.arc(a);
    if (arc.kind == ArcKind::kVirtual || !arc.capacity) continue;
    T phi = cost(loads.load[a], FromRational<T>(*arc.capacity));
    if (arc.kind == ArcKind::kIntra) {
      intra += phi;
    } else {
      inter += phi;
    }
  }
  return intra + alpha * inter;
}

template <typename T>
T PhiTotal(const LoadMap<T>& loads, const Graph& graph,
           const CostParams& params) {
  return PhiTotal<T>(loads, graph, LinkCost<T>(params),
                     FromRational<T>(params.alpha));
}

template class LinkCost<double>;
template class LinkCost<Rational>;
template double PhiTotal<double>(const LoadMap<double>&, const Graph&,
                                 const CostParams&);
template Rational PhiTotal<Rational>(const LoadMap<Rational>&, const Graph&,
                                     const CostParams&);
template double PhiTotal<double>(const LoadMap<double>&, const Graph&,
                                 const LinkCost<double>&, const double&);
template Rational PhiTotal<Rational>(const LoadMap<Rational>&, const Graph&,
                                     const LinkCost<Rational>&,
                                     const Rational&);

}  // namespace hplwo
