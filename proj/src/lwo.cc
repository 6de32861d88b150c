#include "hplwo/lwo.h"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "hplwo/error.h"

namespace hplwo {

WeightVector InitialWeights(const Topology& topology, InitialStrategy strategy,
                            int32_t w_max, const WeightVector* given) {
  const Graph& g = topology.graph();
  size_t arcs = topology.num_intra_arcs();
  if (w_max < 1) throw ConfigError("w_max must be at least 1");
  switch (strategy) {
    case InitialStrategy::kUnit:
      return WeightVector(std::vector<int32_t>(arcs, 1));
    case InitialStrategy::kInverseCapacity: {
      if (arcs == 0) return WeightVector();
      Rational c_min = *g.arc(0).capacity;
      for (ArcIndex a = 0; a < arcs; ++a) c_min = std::min(c_min, *g.arc(a).capacity);
      std::vector<int32_t> w(arcs);
      for (ArcIndex a = 0; a < arcs; ++a) {
        Rational scaled = Rational(w_max) * c_min / *g.arc(a).capacity;
        // round half up
        Rational shifted = scaled + Rational(1, 2);
        boost::multiprecision::cpp_int rounded =
            boost::multiprecision::numerator(shifted) /
            boost::multiprecision::denominator(shifted);
        long long value = rounded.convert_to<long long>();
        w[a] = static_cast<int32_t>(std::clamp<long long>(value, 1, w_max));
      }
      return WeightVector(std::move(w));
    }
    case InitialStrategy::kGiven: {
      if (given == nullptr || given->size() != arcs) {
        throw ConfigError("given weight vector does not match the topology");
      }
      for (int32_t w : given->values()) {
        if (w < 1 || w > w_max) {
          throw ConfigError("given weight " + std::to_string(w) +
                            " outside [1, " + std::to_string(w_max) + "]");
        }
      }
      return *given;
    }
  }
  throw InternalError("unknown initial strategy");
}

void SearchConfig::Validate() const {
  if (iterations < 1) throw ConfigError("iterations must be at least 1");
  if (w_min < 1) throw ConfigError("w_min must be at least 1");
  if (w_max < w_min) throw ConfigError("w_max must be at least w_min");
  if (sample_size < 0) throw ConfigError("sample size must be non-negative");
  if (tabu_tenure < 0) throw ConfigError("tabu tenure must be non-negative");
  if (restart_after < 1) throw ConfigError("restart interval must be positive");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  cost.Validate();
}

std::vector<std::vector<ArcIndex>> WeightVariables(const Topology& topology,
                                                   bool symmetric) {
  std::vector<std::vector<ArcIndex>> vars;
  for (size_t l = 0; l < topology.links().size(); ++l) {
    auto [fwd, rev] = topology.LinkArcs(l);
    if (symmetric) {
      vars.push_back({fwd, rev});
    } else {
      vars.push_back({fwd});
      vars.push_back({rev});
    }
  }
  return vars;
}

uint64_t SearchRng::Below(uint64_t n) {
  if (n == 0) throw InternalError("empty range");
  // Rejection keeps the draw unbiased.
  uint64_t limit = std::numeric_limits<uint64_t>::max() -
                   std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::vector<Move> SampleNeighborhood(const std::vector<int32_t>& current,
                                     int32_t w_min, int32_t w_max,
                                     size_t sample, SearchRng* rng) {
  uint64_t per_var = static_cast<uint64_t>(w_max - w_min);
  uint64_t total = per_var * current.size();
  auto decode = [&](uint64_t index) {
    uint32_t var = static_cast<uint32_t>(index / per_var);
    int32_t weight = w_min + static_cast<int32_t>(index % per_var);
    if (weight >= current[var]) ++weight;
    return Move{var, weight};
  };
  std::vector<Move> moves;
  if (total <= sample) {
    for (uint64_t i = 0; i < total; ++i) moves.push_back(decode(i));
    return moves;
  }
  std::set<uint64_t> picked;
  while (picked.size() < sample) picked.insert(rng->Below(total));
  for (uint64_t i : picked) moves.push_back(decode(i));
  return moves;
}

WeightEvaluator::WeightEvaluator(const ExtendedTopology& xt,
                                 const AggregatedTM& tm,
                                 const CostParams& cost)
    : graph_(xt.graph()),
      plan_(MakeDemandPlan<double>(xt, tm)),
      cost_(cost),
      alpha_(ToDouble(cost.alpha)) {}

LoadMap<double> WeightEvaluator::Loads(const WeightVector& w) const {
  return ComputeLoads<double>(graph_, w, plan_);
}

double WeightEvaluator::Cost(const LoadMap<double>& loads) const {
  return PhiTotal<double>(loads, graph_, cost_, alpha_);
}

double WeightEvaluator::Cost(const WeightVector& w) const {
  return Cost(Loads(w));
}

namespace {

class Search {
 public:
  Search(const ExtendedTopology& xt, const AggregatedTM& tm,
         const SearchConfig& cfg)
      : xt_(xt),
        cfg_(cfg),
        eval_(xt, tm, cfg.cost),
        vars_(WeightVariables(xt.base(), cfg.symmetric)),
        rng_(cfg.seed) {}

  SearchResult Run() {
    std::vector<int32_t> current = InitialValues();
    double current_cost = Evaluate(current);
    best_ = current;
    best_cost_ = current_cost;

    size_t sample = cfg_.sample_size > 0
                        ? static_cast<size_t>(cfg_.sample_size)
                        : std::min<size_t>(5 * vars_.size(), 1000);
    std::map<Move, int> tabu_until;
    int stall = 0;

    for (int it = 1; it <= cfg_.iterations; ++it) {
      std::vector<Move> moves;
      if (!vars_.empty() && cfg_.w_max > cfg_.w_min) {
        moves = SampleNeighborhood(current, cfg_.w_min, cfg_.w_max, sample,
                                   &rng_);
      }
      std::vector<double> costs = EvaluateMoves(current, moves);

      const Move* chosen = nullptr;
      double chosen_cost = 0;
      for (size_t i = 0; i < moves.size(); ++i) {
        auto t = tabu_until.find(moves[i]);
        bool tabu = t != tabu_until.end() && t->second >= it;
        if (tabu && !(costs[i] < best_cost_)) continue;
        // moves are sorted, so strict < keeps the lexicographic tie-break
        if (chosen == nullptr || costs[i] < chosen_cost) {
          chosen = &moves[i];
          chosen_cost = costs[i];
        }
      }

      bool descent_stuck = cfg_.tabu_tenure == 0 && chosen != nullptr &&
                           !(chosen_cost < current_cost);
      if (chosen == nullptr || descent_stuck) {
        current = Perturb(best_);
        current_cost = Evaluate(current);
        stall = 0;
      } else {
        if (cfg_.tabu_tenure > 0) {
          tabu_until[{chosen->variable, current[chosen->variable]}] =
              it + cfg_.tabu_tenure;
        }
        current[chosen->variable] = chosen->weight;
        current_cost = chosen_cost;
      }

      if (current_cost < best_cost_) {
        best_ = current;
        best_cost_ = current_cost;
        stall = 0;
      } else if (++stall >= cfg_.restart_after) {
        current = Perturb(best_);
        current_cost = Evaluate(current);
        stall = 0;
        if (current_cost < best_cost_) {
          best_ = current;
          best_cost_ = current_cost;
        }
      }

      LoadMap<double> loads = eval_.Loads(ToWeights(current));
      trace_.push_back({it, best_cost_, current_cost,
                        UMax(loads, xt_.graph(), kIntraArcs),
                        UMax(loads, xt_.graph(), kInterArcs)});
    }

    SearchResult result;
    result.weights = ToWeights(best_);
    result.cost = best_cost_;
    result.trace = std::move(trace_);
    result.evaluations = evaluations_;
    return result;
  }

 private:
  std::vector<int32_t> InitialValues() const {
    WeightVector init = InitialWeights(xt_.base(), cfg_.initial, cfg_.w_max,
                                       &cfg_.given);
    std::vector<int32_t> values;
    for (const std::vector<ArcIndex>& arcs : vars_) {
      int32_t w = init[arcs[0]];
      for (ArcIndex a : arcs) {
        if (init[a] != w) {
          throw ConfigError(
              "initial weights differ between the directions of link '" +
              xt_.graph().arc(a).link_id + "' under symmetric weights");
        }
      }
      values.push_back(std::clamp(w, cfg_.w_min, cfg_.w_max));
    }
    return values;
  }

  WeightVector ToWeights(const std::vector<int32_t>& values) const {
    std::vector<int32_t> w(xt_.num_intra_arcs(), 0);
    for (size_t v = 0; v < vars_.size(); ++v) {
      for (ArcIndex a : vars_[v]) w[a] = values[v];
    }
    return WeightVector(std::move(w));
  }

  double Evaluate(const std::vector<int32_t>& values) {
    ++evaluations_;
    return eval_.Cost(ToWeights(values));
  }

  std::vector<double> EvaluateMoves(const std::vector<int32_t>& current,
                                    const std::vector<Move>& moves) {
    std::vector<double> costs(moves.size());
    evaluations_ += static_cast<int64_t>(moves.size());
    auto work = [&](size_t first, size_t stride) {
      WeightVector w = ToWeights(current);
      for (size_t i = first; i < moves.size(); i += stride) {
        const Move& m = moves[i];
        for (ArcIndex a : vars_[m.variable]) w.Set(a, m.weight);
        costs[i] = eval_.Cost(w);
        for (ArcIndex a : vars_[m.variable]) w.Set(a, current[m.variable]);
      }
    };
    size_t threads = std::min<size_t>(cfg_.threads, moves.size());
    if (threads <= 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
      for (std::thread& t : pool) t.join();
    }
    return costs;
  }

  // Re-draws a few variables of `from` uniformly in range.
  std::vector<int32_t> Perturb(const std::vector<int32_t>& from) {
    std::vector<int32_t> out = from;
    if (out.empty()) return out;
    size_t count = std::min(out.size(), std::max<size_t>(2, out.size() / 4));
    uint64_t span = static_cast<uint64_t>(cfg_.w_max - cfg_.w_min) + 1;
    for (size_t i = 0; i < count; ++i) {
      size_t var = rng_.Below(out.size());
      out[var] = cfg_.w_min + static_cast<int32_t>(rng_.Below(span));
    }
    return out;
  }

  const ExtendedTopology& xt_;
  const SearchConfig& cfg_;
  WeightEvaluator eval_;
  std::vector<std::vector<ArcIndex>> vars_;
  SearchRng rng_;
  std::vector<int32_t> best_;
  double best_cost_ = 0;
  std::vector<TraceRow> trace_;
  int64_t evaluations_ = 0;
};

}  // namespace

SearchResult Optimize(const ExtendedTopology& xt, const AggregatedTM& tm,
                      const SearchConfig& cfg) {
  cfg.Validate();
  if (cfg.cost.alpha > 0 && !xt.HasInterArcs()) {
    throw ConfigError(
        "alpha > 0 needs interdomain links; the topology has none (simplified "
        "or no peerings declared)");
  }
  CheckRoutable(xt, tm);
  return Search(xt, tm, cfg).Run();
}

}  // namespace hplwo
