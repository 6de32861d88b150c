#include <doctest.h>

#include <sstream>

#include "hplwo/error.h"
#include "hplwo/hp_simulator.h"
#include "hplwo/lwo.h"
#include "hplwo/synthetic.h"
#include "oracles.h"

namespace hplwo {
namespace {

TopologySpec Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseTopology(in, "test");
}

TEST_CASE("initial weights") {
  Topology t = BuildTopology(ToyTopology());
  CHECK(InitialWeights(t, InitialStrategy::kUnit, 150).values() ==
        std::vector<int32_t>(6, 1));
  WeightVector inv = InitialWeights(t, InitialStrategy::kInverseCapacity, 150);
  CHECK(inv.values() == std::vector<int32_t>{120, 120, 150, 150, 150, 150});
  WeightVector given = t.FileWeights();
  CHECK(InitialWeights(t, InitialStrategy::kGiven, 150, &given) == given);
  WeightVector too_big = ToyWeights(200, 1, 1);
  CHECK_THROWS_AS(InitialWeights(t, InitialStrategy::kGiven, 150, &too_big),
                  ConfigError);
  CHECK_THROWS_AS(InitialWeights(t, InitialStrategy::kGiven, 150), ConfigError);
}

TEST_CASE("inverse-capacity weights reverse the capacity order") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Topology t = BuildTopology(RandomInstance(seed).topology);
    WeightVector w = InitialWeights(t, InitialStrategy::kInverseCapacity, 150);
    const Graph& g = t.graph();
    for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
      CHECK(w[a] >= 1);
      CHECK(w[a] <= 150);
      for (ArcIndex b = 0; b < g.num_arcs(); ++b) {
        if (*g.arc(a).capacity < *g.arc(b).capacity) CHECK(w[a] >= w[b]);
      }
    }
  }
}

TEST_CASE("neighborhood size and sampling") {
  std::vector<int32_t> current = {3, 150, 1};
  SearchRng rng(1);
  std::vector<Move> all = SampleNeighborhood(current, 1, 150, 1 << 20, &rng);
  CHECK(all.size() == 3 * 149);
  for (const Move& m : all) CHECK(m.weight != current[m.variable]);
  CHECK(std::is_sorted(all.begin(), all.end()));
  std::vector<Move> some = SampleNeighborhood(current, 1, 150, 15, &rng);
  CHECK(some.size() == 15);
  CHECK(std::is_sorted(some.begin(), some.end()));
  CHECK(std::adjacent_find(some.begin(), some.end()) == some.end());
}

TEST_CASE("search variables follow the symmetric flag") {
  Topology t = BuildTopology(ToyTopology());
  CHECK(WeightVariables(t, true).size() == 3);
  CHECK(WeightVariables(t, false).size() == 6);
}

struct Toy {
  Instance inst = ToyInstance();
  Topology t = BuildTopology(inst.topology);
  ExtendedTopology xt =
      ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
};

TEST_CASE("toy optimization splits across both egresses") {
  Toy toy;
  SearchConfig cfg;
  cfg.iterations = 20;
  SearchResult r = Optimize(toy.xt, toy.inst.tm, cfg);
  LoadMap<Rational> loads = ComputeLoads<Rational>(toy.xt, r.weights, toy.inst.tm);
  CHECK(UMax(loads, toy.xt.graph(), kIntraArcs) == Rational(5, 16));
  CHECK(r.trace.size() == 20);
  // Predicted loads are the loads hot-potato routing produces.
  CHECK(loads == SimulateHotPotato<Rational>(toy.xt, r.weights, toy.inst.tm));
}

TEST_CASE("single link: every weight is optimal") {
  TopologySpec spec = Parse("node A intra\nnode B intra\nlink x A B 10 1\n");
  Topology t = BuildTopology(spec);
  ExtendedTopology xt = ExtendTopology(t, {}, {});
  AggregatedTM tm;
  tm.invar[{"A", "B"}] = 6;
  SearchConfig cfg;
  cfg.iterations = 5;
  SearchResult r = Optimize(xt, tm, cfg);
  CHECK(r.cost == doctest::Approx(ToDouble(PhiLink<Rational>(6, 10, cfg.cost))));
}

TEST_CASE("search trace and bounds") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = RandomInstance(seed);
    Topology t = BuildTopology(inst.topology);
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    for (bool symmetric : {true, false}) {
      SearchConfig cfg;
      cfg.seed = seed;
      cfg.iterations = 15;
      cfg.w_max = 20;
      cfg.symmetric = symmetric;
      SearchResult r = Optimize(xt, inst.tm, cfg);
      for (size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].best_cost <= r.trace[i - 1].best_cost);
      }
      CHECK(r.trace.back().best_cost == r.cost);
      for (int32_t w : r.weights.values()) {
        CHECK(w >= 1);
        CHECK(w <= 20);
      }
      if (symmetric) {
        for (size_t l = 0; l < t.links().size(); ++l) {
          auto [a, b] = t.LinkArcs(l);
          CHECK(r.weights[a] == r.weights[b]);
        }
      }
      WeightEvaluator eval(xt, inst.tm, cfg.cost);
      CHECK(eval.Cost(r.weights) == doctest::Approx(r.cost));
    }
  }
}

TEST_CASE("fixed seed gives identical runs, with or without threads") {
  Instance inst = RandomInstance(17);
  Topology t = BuildTopology(inst.topology);
  ExtendedTopology xt =
      ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
  SearchConfig cfg;
  cfg.seed = 7;
  cfg.iterations = 25;
  SearchResult a = Optimize(xt, inst.tm, cfg);
  SearchResult b = Optimize(xt, inst.tm, cfg);
  cfg.threads = 4;
  SearchResult c = Optimize(xt, inst.tm, cfg);
  CHECK(a.weights == b.weights);
  CHECK(a.weights == c.weights);
  REQUIRE(a.trace.size() == c.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].best_cost == b.trace[i].best_cost);
    CHECK(a.trace[i].current_cost == c.trace[i].current_cost);
  }
}

TEST_CASE("tenure zero is a descent with restarts") {
  Toy toy;
  SearchConfig cfg;
  cfg.tabu_tenure = 0;
  cfg.iterations = 30;
  SearchResult r = Optimize(toy.xt, toy.inst.tm, cfg);
  CHECK(r.cost == doctest::Approx(5.0));
}

TEST_CASE("small instances reach the exhaustive optimum") {
  int checked = 0;
  for (uint64_t seed = 1; checked < 8; ++seed) {
    RandomOptions opt;
    opt.min_nodes = 3;
    opt.max_nodes = 5;
    opt.max_extra_links = 1;
    Instance inst = RandomInstance(seed, opt);
    Topology t = BuildTopology(inst.topology);
    if (t.links().size() > 4) continue;
    ++checked;
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.w_max = 4;
    WeightEvaluator eval(xt, inst.tm, cfg.cost);
    double best = std::numeric_limits<double>::infinity();
    testing::ForEachSymmetricWeights(t, 1, 4, [&](const WeightVector& w) {
      best = std::min(best, eval.Cost(w));
    });
    CHECK(Optimize(xt, inst.tm, cfg).cost == doctest::Approx(best));
  }
}

TEST_CASE("configuration errors") {
  Toy toy;
  SearchConfig cfg;
  cfg.cost.alpha = 1;
  CHECK_THROWS_AS(Optimize(SimplifyModel(toy.xt), toy.inst.tm, cfg),
                  ConfigError);
  cfg = SearchConfig{};
  cfg.iterations = 0;
  CHECK_THROWS_AS(Optimize(toy.xt, toy.inst.tm, cfg), ConfigError);
  cfg = SearchConfig{};
  cfg.w_max = 0;
  CHECK_THROWS_AS(Optimize(toy.xt, toy.inst.tm, cfg), ConfigError);
}

TEST_CASE("unknown TM endpoints are rejected before searching") {
  TopologySpec spec = ToyTopology();
  Topology t = BuildTopology(spec);
  EgressAggregate a{"A0", MakeEgressSet({{"R2", "N1"}}), {}, 0};
  ExtendedTopology xt = ExtendTopology(t, spec.peerings, {a});
  AggregatedTM tm;
  tm.aggregates = {a};
  tm.hp[{"R1", "A0"}] = 1;
  tm.invar[{"R1", "R3"}] = 1;
  CHECK_NOTHROW(Optimize(xt, tm, SearchConfig{}));
  tm.hp[{"R9", "A0"}] = 1;
  CHECK_THROWS_AS(Optimize(xt, tm, SearchConfig{}), InputError);
}

}  // namespace
}  // namespace hplwo
