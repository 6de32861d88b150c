#ifndef HPLWO_OBJECTIVE_H
#define HPLWO_OBJECTIVE_H

#include <string>
#include <vector>

#include "hplwo/igp.h"
#include "hplwo/net_model.h"
#include "hplwo/rational.h"

namespace hplwo {

// One linear piece of the per-link cost: from `threshold` (a utilization)
// up to the next piece's threshold, cost grows by `slope` per Mbps of load.
struct CostSegment {
  Rational threshold;
  Rational slope;
};

// Piecewise-linear convex link cost plus the weight given to interdomain
// links. The cost is denominated in load: phi(l) integrates slope(u) dl with
// u = l / c, so phi(l) = l while the link is below its first breakpoint.
struct CostParams {
  std::vector<CostSegment> segments = DefaultSegments();
  Rational alpha = 0;

  // Slopes 1, 3, 10, 70, 500, 5000 with breakpoints at utilization
  // 0, 1/3, 2/3, 9/10, 1, 11/10.
  static std::vector<CostSegment> DefaultSegments();

  // Thresholds strictly increasing from 0, slopes strictly increasing and
  // positive, alpha non-negative. Throws ConfigError.
  void Validate() const;

  // "0:1,1/3:3,..." round-trips through ParseSegments.
  std::string FormatSegments() const;
  static std::vector<CostSegment> ParseSegments(const std::string& text);
};

// Evaluates the link cost in a fixed scalar type. Build one per search and
// reuse it; construction converts the breakpoints once.
template <typename T>
class LinkCost {
 public:
  explicit LinkCost(const CostParams& params);

  // capacity must be positive; loads above capacity are legal.
  T operator()(const T& load, const T& capacity) const;

 private:
  std::vector<T> thresholds_;
  std::vector<T> slopes_;
};

template <typename T>
T PhiLink(const T& load, const T& capacity, const CostParams& params) {
  return LinkCost<T>(params)(load, capacity);
}

// Sum over intra arcs plus alpha times the sum over inter arcs. Virtual arcs
// never contribute.
template <typename T>
T PhiTotal(const LoadMap<T>& loads, const Graph& graph,
           const CostParams& params);

template <typename T>
T PhiTotal(const LoadMap<T>& loads, const Graph& graph, const LinkCost<T>& cost,
           const T& alpha);

extern template class LinkCost<double>;
extern template class LinkCost<Rational>;
extern template double PhiTotal<double>(const LoadMap<double>&, const Graph&,
                                        const CostParams&);
extern template Rational PhiTotal<Rational>(const LoadMap<Rational>&,
                                            const Graph&, const CostParams&);
extern template double PhiTotal<double>(const LoadMap<double>&, const Graph&,
                                        const LinkCost<double>&,
                                        const double&);
extern template Rational PhiTotal<Rational>(const LoadMap<Rational>&,
                                            const Graph&,
                                            const LinkCost<Rational>&,
                                            const Rational&);

}  // namespace hplwo

#endif  // HPLWO_OBJECTIVE_H
