#include <doctest.h>

#include <set>
#include <sstream>

#include "hplwo/error.h"
#include "hplwo/hp_simulator.h"
#include "hplwo/lwo.h"
#include "hplwo/synthetic.h"
#include "oracles.h"

namespace hplwo {
namespace {

struct Toy {
  Instance inst = ToyInstance();
  Topology t = BuildTopology(inst.topology);
  ExtendedTopology xt =
      ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
  const EgressAggregate& agg() const { return inst.tm.aggregates[0]; }
};

TEST_CASE("egress selection follows IGP distance") {
  Toy toy;
  CHECK(SelectEgresses(toy.xt, ToyWeights(1, 2, 1), toy.agg(), "R1") ==
        std::vector<EgressPoint>{{"R2", "N1"}});
  CHECK(SelectEgresses(toy.xt, ToyWeights(2, 1, 1), toy.agg(), "R1") ==
        std::vector<EgressPoint>{{"R3", "N2"}});
  CHECK(SelectEgresses(toy.xt, ToyWeights(1, 1, 1), toy.agg(), "R1").size() == 2);
  CHECK(SelectEgresses(toy.xt, ToyWeights(1, 1, 1), toy.agg(), "R1",
                       TieBreak::kLowestId) ==
        std::vector<EgressPoint>{{"R2", "N1"}});
  CHECK_THROWS_AS(SelectEgresses(toy.xt, ToyWeights(1, 1, 1), toy.agg(), "R2"),
                  InputError);
}

TEST_CASE("folding the toy TM") {
  Toy toy;
  AggregatedTM deployed = FoldHotPotato(toy.inst.tm, toy.xt, toy.t.FileWeights());
  CHECK(deployed.hp.empty());
  CHECK(deployed.invar.size() == 1);
  CHECK(deployed.invar.at({"R1", "R2"}) == 5);
  CHECK(deployed.exits.at("N1") == 5);

  AggregatedTM tie = FoldHotPotato(toy.inst.tm, toy.xt, ToyWeights(1, 1, 1));
  CHECK(tie.invar.at({"R1", "R2"}) == Rational(5, 2));
  CHECK(tie.invar.at({"R1", "R3"}) == Rational(5, 2));

  AggregatedTM no_hp;
  no_hp.invar[{"R1", "R3"}] = 4;
  no_hp.exits["N2"] = 4;
  AggregatedTM folded = FoldHotPotato(no_hp, toy.xt, ToyWeights(1, 1, 1));
  CHECK(folded.invar == no_hp.invar);
  CHECK(folded.exits == no_hp.exits);
}

TEST_CASE("folding is idempotent") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = RandomInstance(seed);
    Topology t = BuildTopology(inst.topology);
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    WeightVector w = t.FileWeights();
    AggregatedTM once = FoldHotPotato(inst.tm, xt, w);
    AggregatedTM twice = FoldHotPotato(once, xt, w);
    CHECK(once == twice);
    CHECK(SimulateHotPotato<Rational>(xt, w, once) ==
          SimulateHotPotato<Rational>(xt, w, twice));
  }
}

TEST_CASE("simulation equals extended-topology routing") {
  int checked = 0;
  for (uint64_t seed = 1; checked < 15; ++seed) {
    RandomOptions opt;
    opt.max_nodes = 5;
    opt.max_extra_links = 2;
    Instance inst = RandomInstance(seed, opt);
    Topology t = BuildTopology(inst.topology);
    if (t.links().size() > 5) continue;
    ++checked;
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    testing::ForEachSymmetricWeights(t, 1, 3, [&](const WeightVector& w) {
      REQUIRE(ComputeLoads<Rational>(xt, w, inst.tm) ==
              SimulateHotPotato<Rational>(xt, w, inst.tm));
    });
  }
}

TEST_CASE("fold plus ECMP equals extended routing without ingress ties") {
  int compared = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = RandomInstance(seed);
    Topology t = BuildTopology(inst.topology);
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    ExtendedTopology blind = ExtendTopology(t, inst.topology.peerings, {});
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int32_t> values(t.num_intra_arcs());
      for (size_t l = 0; l < t.links().size(); ++l) {
        values[2 * l] = values[2 * l + 1] =
            1 + static_cast<int32_t>((l * 11 + seed * 5 + trial * 7) % 9);
      }
      WeightVector w(values);
      bool ties = false;
      for (const auto& [key, v] : inst.tm.hp) {
        std::set<std::string> routers;
        for (const EgressPoint& e : SelectEgresses(
                 xt, w, *inst.tm.FindAggregate(key.second), key.first)) {
          routers.insert(e.router);
        }
        ties |= routers.size() > 1;
      }
      if (ties) continue;
      ++compared;
      auto extended = ComputeLoads<Rational>(xt, w, inst.tm);
      auto folded = ComputeLoads<Rational>(blind, w, FoldHotPotato(inst.tm, xt, w));
      size_t shared = blind.graph().num_arcs();
      CHECK(std::vector<Rational>(extended.load.begin(),
                                  extended.load.begin() + shared) == folded.load);
    }
  }
  CHECK(compared > 50);
}

// Equal-cost egresses reached over paths that diverge at the ingress: each
// router splits over its own next hops, so R0 sends a third on each arc,
// while splitting per egress first would give 1/4, 1/4, 1/2.
TEST_CASE("tied ingress: per-router splitting differs from per-egress folding") {
  std::istringstream in(
      "node R0 intra\nnode R1 intra\nnode R2 intra\nnode M intra\n"
      "link a R0 R1 100 2\nlink b R0 M 100 1\nlink c M R1 100 1\n"
      "link d R0 R2 100 2\n"
      "peering N1 R1 X1 100\npeering N2 R2 X2 100\n");
  TopologySpec spec = ParseTopology(in, "fig");
  Topology t = BuildTopology(spec);
  AggregatedTM tm;
  tm.aggregates = {{"P", MakeEgressSet({{"R1", "N1"}, {"R2", "N2"}}), {}, 12}};
  tm.hp[{"R0", "P"}] = 12;
  ExtendedTopology xt = ExtendTopology(t, spec.peerings, tm.aggregates);
  WeightVector w = t.FileWeights();

  LoadMap<Rational> sim = SimulateHotPotato<Rational>(xt, w, tm);
  CHECK(sim.load[0] == 4);
  CHECK(sim.load[2] == 4);
  CHECK(sim.load[6] == 4);
  CHECK(sim == ComputeLoads<Rational>(xt, w, tm));

  ExtendedTopology blind = ExtendTopology(t, spec.peerings, {});
  LoadMap<Rational> folded =
      ComputeLoads<Rational>(blind, w, FoldHotPotato(tm, xt, w));
  CHECK(folded.load[0] == 3);
  CHECK(folded.load[2] == 3);
  CHECK(folded.load[6] == 6);
}

TEST_CASE("traffic entering at an egress router exits locally") {
  std::istringstream in(
      "node A intra\nnode B intra\nlink l A B 10 1\n"
      "peering N1 A X1 10\npeering N2 A X2 10\npeering N3 B X3 10\n");
  TopologySpec spec = ParseTopology(in, "local");
  Topology t = BuildTopology(spec);
  AggregatedTM tm;
  tm.aggregates = {{"P",
                    MakeEgressSet({{"A", "N1"}, {"A", "N2"}, {"B", "N3"}}),
                    {},
                    0}};
  tm.hp[{"A", "P"}] = 6;
  ExtendedTopology xt = ExtendTopology(t, spec.peerings, tm.aggregates);
  LoadMap<Rational> sim = SimulateHotPotato<Rational>(xt, t.FileWeights(), tm);
  CHECK(sim.load[0] == 0);
  CHECK(sim.load[*xt.PeeringArc("N1")] == 3);
  CHECK(sim.load[*xt.PeeringArc("N2")] == 3);
  CHECK(sim == ComputeLoads<Rational>(xt, t.FileWeights(), tm));
  AggregatedTM folded = FoldHotPotato(tm, xt, t.FileWeights());
  CHECK(folded.invar.at({"A", "A"}) == 6);
  CHECK(folded.exits.at("N1") == 3);
}

TEST_CASE("lowest-id tie-break exits at a single egress") {
  Toy toy;
  LoadMap<Rational> sim = SimulateHotPotato<Rational>(
      toy.xt, ToyWeights(1, 1, 1), toy.inst.tm, TieBreak::kLowestId);
  CHECK(sim.load[0] == 5);
  CHECK(sim.load[*toy.xt.PeeringArc("N1")] == 5);
  CHECK(sim.load[*toy.xt.PeeringArc("N2")] == 0);
}

TEST_CASE("three modes on the toy") {
  Toy toy;
  EvalConfig cfg;
  cfg.search.iterations = 50;
  EvalReport r = EvaluateModes("toy", toy.xt, toy.inst.tm, toy.t.FileWeights(), cfg);
  REQUIRE(r.modes.size() == 3);
  CHECK(r.Find(Mode::kOptimistic)->umax_intra == 0.3125);
  CHECK(r.Find(Mode::kResulting)->umax_intra == 0.625);
  CHECK(r.Find(Mode::kBgpAware)->umax_intra == 0.3125);
  CHECK(r.Find(Mode::kBgpAware)->prediction_gap <= 1e-9);
  CHECK(r.Find(Mode::kOptimistic)->wall_ms == 0);
}

TEST_CASE("without hot-potato traffic the modes agree") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Instance inst = RandomInstance(seed);
    inst.tm.hp.clear();
    if (inst.tm.invar.empty()) inst.tm.invar[{"R0", "R1"}] = 3;
    Topology t = BuildTopology(inst.topology);
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    EvalConfig cfg;
    cfg.search.iterations = 10;
    cfg.search.seed = seed;
    EvalReport r = EvaluateModes("x", xt, inst.tm, t.FileWeights(), cfg);
    for (const ModeResult& m : r.modes) {
      CHECK(m.umax_intra == r.modes[0].umax_intra);
      CHECK(m.phi_total == r.modes[0].phi_total);
      CHECK(m.weights == r.modes[0].weights);
    }
  }
}

TEST_CASE("bgp-aware predictions match the simulation") {
  RandomOptions opt;
  opt.min_nodes = 8;
  opt.max_nodes = 8;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = RandomInstance(seed, opt);
    Topology t = BuildTopology(inst.topology);
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    EvalConfig cfg;
    cfg.search.iterations = 10;
    cfg.search.seed = seed;
    cfg.optimistic = cfg.resulting = false;
    EvalReport r = EvaluateModes("x", xt, inst.tm, t.FileWeights(), cfg);
    CHECK(r.Find(Mode::kBgpAware)->prediction_gap <= 1e-9);
  }
}

TEST_CASE("simplified bgp-aware search needs alpha zero") {
  Toy toy;
  EvalConfig cfg;
  cfg.simplify = true;
  cfg.search.iterations = 10;
  EvalReport r = EvaluateModes("toy", toy.xt, toy.inst.tm, toy.t.FileWeights(), cfg);
  CHECK(r.Find(Mode::kBgpAware)->umax_intra == 0.3125);
  cfg.search.cost.alpha = 1;
  CHECK_THROWS_AS(
      EvaluateModes("toy", toy.xt, toy.inst.tm, toy.t.FileWeights(), cfg),
      ConfigError);
}

TEST_CASE("fixed weights evaluation") {
  Toy toy;
  EvalReport r = EvaluateWeights("toy", toy.xt, toy.inst.tm,
                                 ToyWeights(2, 1, 1), EvalConfig{});
  CHECK(r.Find(Mode::kResulting)->umax_intra == 0.625);
  CHECK(r.Find(Mode::kBgpAware)->umax_intra == 0.625);
  r = EvaluateWeights("toy", toy.xt, toy.inst.tm, toy.t.FileWeights(),
                      EvalConfig{});
  CHECK(r.Find(Mode::kResulting)->umax_intra == 0.5);
}

TEST_CASE("empirical CDF") {
  CHECK(Cdf({0.5}) == std::vector<std::pair<double, double>>{{0.5, 1.0}});
  auto c = Cdf({0.4, 0.2, 0.4});
  REQUIRE(c.size() == 2);
  CHECK(c[0].first == 0.2);
  CHECK(c[0].second == doctest::Approx(1.0 / 3));
  CHECK(c[1] == std::pair<double, double>{0.4, 1.0});
  CHECK_THROWS_AS(Cdf({}), InputError);

  SearchRng rng(2512);
  std::vector<double> values;
  for (int i = 0; i < 2512; ++i) values.push_back(rng.Below(1000) / 999.0);
  auto big = Cdf(values);
  for (size_t i = 1; i < big.size(); ++i) {
    CHECK(big[i].first > big[i - 1].first);
    CHECK(big[i].second > big[i - 1].second);
  }
  CHECK(big.back().second == 1.0);
}

TEST_CASE("utilization histogram bins") {
  auto bins = UtilizationHistogram({0, 0.05, 0.1, 0.3, 0.99, 1.0, 2.5});
  REQUIRE(bins.size() == 11);
  CHECK(bins[0] == 2);
  CHECK(bins[1] == 1);
  CHECK(bins[3] == 1);
  CHECK(bins[9] == 1);
  CHECK(bins[10] == 2);
}

}  // namespace
}  // namespace hplwo
