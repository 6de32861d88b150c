// Prints one PASS/FAIL line per acceptance criterion; exits 1 on any failure.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "hplwo/bgp_classifier.h"
#include "hplwo/cli.h"
#include "hplwo/hp_simulator.h"
#include "hplwo/igp.h"
#include "hplwo/lwo.h"
#include "hplwo/net_model.h"
#include "hplwo/objective.h"
#include "hplwo/synthetic.h"
#include "hplwo/tm_pipeline.h"
#include "oracles.h"

namespace hplwo {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool HasIngressTie(const ExtendedTopology& xt, const WeightVector& w,
                   const AggregatedTM& tm) {
  HotPotatoRouter router(xt, w);
  for (const auto& [key, volume] : tm.hp) {
    const EgressAggregate* agg = tm.FindAggregate(key.second);
    if (agg->HasEgressRouter(key.first)) continue;
    std::vector<EgressPoint> chosen = router.SelectEgresses(*agg, key.first);
    std::set<std::string> routers;
    for (const EgressPoint& e : chosen) routers.insert(e.router);
    if (routers.size() > 1) return true;
  }
  return false;
}

Rational SumIntra(const LoadMap<Rational>& loads, size_t intra_arcs,
                  const Graph& g, bool by_capacity) {
  Rational sum = 0;
  for (ArcIndex a = 0; a < intra_arcs; ++a) {
    sum += by_capacity ? loads.load[a] / *g.arc(a).capacity : loads.load[a];
  }
  return sum;
}

// 1. Toy reproduction, exact.
Outcome ToyReproduction() {
  auto start = Clock::now();
  Instance toy = ToyInstance();
  Topology t = BuildTopology(toy.topology);
  ExtendedTopology xt = ExtendTopology(t, toy.topology.peerings,
                                       toy.tm.aggregates);
  ExtendedTopology blind = ExtendTopology(t, toy.topology.peerings, {});
  const Graph& g = xt.graph();

  AggregatedTM folded = FoldHotPotato(toy.tm, xt, t.FileWeights());
  bool fold_ok = folded.hp.empty() && folded.invar.size() == 1 &&
                 folded.invar.count({"R1", "R2"}) &&
                 folded.invar.at({"R1", "R2"}) == 5;

  WeightVector w = ToyWeights(2, 1, 1);
  Rational optimistic =
      UMax(ComputeLoads<Rational>(blind, w, folded), blind.graph(), kIntraArcs);
  Rational resulting =
      UMax(SimulateHotPotato<Rational>(xt, w, toy.tm), g, kIntraArcs);

  SearchConfig cfg;
  SearchResult r = Optimize(xt, toy.tm, cfg);
  Rational aware = UMax(ComputeLoads<Rational>(xt, r.weights, toy.tm), g,
                        kIntraArcs);
  double secs = Seconds(start);
  Outcome o;
  o.pass = fold_ok && optimistic == Rational(5, 16) &&
           resulting == Rational(5, 8) && aware == Rational(5, 16) && secs < 1;
  std::ostringstream s;
  s << "fold {R1->R2: 5} " << (fold_ok ? "ok" : "wrong") << ", optimistic "
    << optimistic << ", resulting " << resulting << ", bgp-aware " << aware
    << fmt::format(", {:.3f} s", secs);
  o.detail = s.str();
  return o;
}

// 2. Predicted loads of the bgp-aware weights match the simulator.
Outcome SelfConsistency() {
  auto start = Clock::now();
  RandomOptions opt;
  opt.max_nodes = 10;
  opt.max_extra_links = 6;
  opt.max_aggregates = 4;
  opt.max_hp_cells = 6;
  int instances = 0;
  double worst = 0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = RandomInstance(1000 + seed, opt);
    Topology t = BuildTopology(inst.topology);
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    SearchConfig cfg;
    cfg.iterations = 20;
    cfg.seed = seed;
    SearchResult r = Optimize(xt, inst.tm, cfg);
    LoadMap<double> predicted = ComputeLoads<double>(xt, r.weights, inst.tm);
    LoadMap<double> simulated =
        SimulateHotPotato<double>(xt, r.weights, inst.tm);
    for (size_t a = 0; a < predicted.load.size(); ++a) {
      double scale = std::max(
          {std::abs(predicted.load[a]), std::abs(simulated.load[a]), 1e-12});
      worst = std::max(worst,
                       std::abs(predicted.load[a] - simulated.load[a]) / scale);
    }
    ++instances;
  }
  double secs = Seconds(start);
  return {instances >= 200 && worst <= 1e-9 && secs < 60,
          fmt::format("{} instances, max relative gap {:g}, {:.2f} s",
                      instances, worst, secs)};
}

// 3. Extended-topology routing against the hop-by-hop simulation, and against
// folding plus intradomain routing where no ingress faces an egress tie.
Outcome FoldingEquivalence() {
  int instances = 0;
  long vectors = 0, simulated_equal = 0, untied = 0, folded_equal = 0;
  for (uint64_t seed = 1; instances < 25; ++seed) {
    RandomOptions opt;
    opt.max_nodes = 6;
    opt.max_extra_links = 3;
    Instance inst = RandomInstance(seed, opt);
    Topology t = BuildTopology(inst.topology);
    bool symmetric = t.num_intra_arcs() > 6;
    if (symmetric && t.links().size() > 6) continue;
    ++instances;
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    ExtendedTopology blind = ExtendTopology(t, inst.topology.peerings, {});
    size_t intra = t.num_intra_arcs();
    auto check = [&](const WeightVector& w) {
      ++vectors;
      LoadMap<Rational> extended = ComputeLoads<Rational>(xt, w, inst.tm);
      if (extended == SimulateHotPotato<Rational>(xt, w, inst.tm)) {
        ++simulated_equal;
      }
      if (HasIngressTie(xt, w, inst.tm)) return;
      ++untied;
      AggregatedTM folded = FoldHotPotato(inst.tm, xt, w);
      LoadMap<Rational> intra_routed = ComputeLoads<Rational>(blind, w, folded);
      if (testing::IntraPart(extended, intra) ==
          testing::IntraPart(intra_routed, intra)) {
        ++folded_equal;
      }
    };
    if (symmetric) {
      testing::ForEachSymmetricWeights(t, 1, 3, check);
    } else {
      testing::ForEachArcWeights(intra, 1, 3, check);
    }
  }
  return {simulated_equal == vectors && folded_equal == untied && untied > 0,
          fmt::format("{} instances, {} weight vectors: simulator equal on {}, "
                      "fold equal on {}/{} without ingress ties",
                      instances, vectors, simulated_equal, folded_equal,
                      untied)};
}

// 4. Unit weights minimize total load, inverse-capacity weights minimize
// average utilization.
Outcome OptimalityOracles() {
  int instances = 0;
  long vectors = 0;
  bool unit_ok = true, inverse_ok = true;
  for (uint64_t seed = 1; instances < 20; ++seed) {
    RandomOptions opt;
    opt.max_nodes = 5;
    opt.max_extra_links = 2;
    Instance inst = RandomInstance(500 + seed, opt);
    // Capacities 20/30/60 make 120 / c an exact integer weight.
    for (LinkSpec& l : inst.topology.links) {
      l.capacity = l.capacity == 10 ? 60 : l.capacity == 20 ? 30 : 20;
    }
    Topology t = BuildTopology(inst.topology);
    if (t.links().size() > 6) continue;
    ++instances;
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    const Graph& g = xt.graph();
    size_t intra = t.num_intra_arcs();
    WeightVector unit = InitialWeights(t, InitialStrategy::kUnit, 6);
    WeightVector inverse =
        InitialWeights(t, InitialStrategy::kInverseCapacity, 6);
    Rational unit_total =
        SumIntra(ComputeLoads<Rational>(xt, unit, inst.tm), intra, g, false);
    Rational inverse_util =
        SumIntra(ComputeLoads<Rational>(xt, inverse, inst.tm), intra, g, true);
    testing::ForEachSymmetricWeights(t, 1, 3, [&](const WeightVector& w) {
      ++vectors;
      LoadMap<Rational> loads = ComputeLoads<Rational>(xt, w, inst.tm);
      if (SumIntra(loads, intra, g, false) < unit_total) unit_ok = false;
      if (SumIntra(loads, intra, g, true) < inverse_util) inverse_ok = false;
    });
  }
  return {unit_ok && inverse_ok,
          fmt::format("{} instances, {} weight vectors; unit {}, "
                      "inverse-capacity {}",
                      instances, vectors, unit_ok ? "minimal" : "beaten",
                      inverse_ok ? "minimal" : "beaten")};
}

double ExhaustiveMinimum(const ExtendedTopology& xt, const AggregatedTM& tm,
                         const SearchConfig& cfg) {
  WeightEvaluator eval(xt, tm, cfg.cost);
  const Topology& t = xt.base();
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](const WeightVector& w) { best = std::min(best, eval.Cost(w)); };
  if (cfg.symmetric) {
    testing::ForEachSymmetricWeights(t, 1, cfg.w_max, visit);
  } else {
    testing::ForEachArcWeights(t.num_intra_arcs(), 1, cfg.w_max, visit);
  }
  return best;
}

// 5. Tabu search against exhaustive enumeration.
Outcome BruteForceOptimizer() {
  auto start = Clock::now();
  int runs = 0, hits = 0;
  for (uint64_t seed = 1; runs < 100; ++seed) {
    RandomOptions opt;
    opt.min_nodes = 3;
    opt.max_nodes = 5;
    opt.max_extra_links = 1;
    Instance inst = RandomInstance(2000 + seed, opt);
    Topology t = BuildTopology(inst.topology);
    SearchConfig cfg;
    cfg.w_max = 4;
    cfg.iterations = 50;
    cfg.seed = seed;
    cfg.symmetric = t.num_intra_arcs() > 4;
    if (WeightVariables(t, cfg.symmetric).size() > 4) continue;
    ++runs;
    ExtendedTopology xt =
        ExtendTopology(t, inst.topology.peerings, inst.tm.aggregates);
    double best = ExhaustiveMinimum(xt, inst.tm, cfg);
    SearchResult r = Optimize(xt, inst.tm, cfg);
    if (r.cost <= best + 1e-9 * std::max(1.0, std::abs(best))) ++hits;
  }
  double secs = Seconds(start);
  return {hits >= 95 && secs < 120,
          fmt::format("{}/{} runs reach the exhaustive minimum, {:.2f} s",
                      hits, runs, secs)};
}

// 6. Aggregation and coverage on the ISP-shaped synthetic instance.
Outcome AggregationCoverage() {
  RawInstance raw = IspShapedPipeline();
  PrefixClassification cls = ClassifyPrefixes(raw.routes);
  std::vector<EgressAggregate> aggs = AggregateByEgressSet(cls);
  AttachVolumes(aggs, cls, raw.flows);
  Rational total = 0;
  int zero = 0;
  for (const EgressAggregate& a : aggs) {
    total += a.attracted_volume;
    if (a.attracted_volume == 0) ++zero;
  }
  TruncationResult r = TruncateAggregates(aggs, Rational(999, 1000));
  Rational excluded = 0;
  for (const EgressAggregate& a : r.remainder) excluded += a.attracted_volume;
  double share = static_cast<double>(excluded / total);
  return {aggs.size() == 26 && zero == 8 && r.kept.size() == 5 &&
              excluded * 1000 <= total,
          fmt::format("{} aggregates ({} without traffic), {} kept at 0.999, "
                      "excluded {:.4f}% of hot-potato volume",
                      aggs.size(), zero, r.kept.size(), 100 * share)};
}

// 7. Counting interdomain links steers traffic off the smaller peering.
Outcome InterdomainProperty() {
  TopologySpec spec;
  spec.nodes = {"R0", "R1", "R2", "A"};
  spec.links = {{"L0", "R0", "R1", 200, 1},
                {"L1", "R0", "R2", 200, 1},
                {"L2", "R0", "A", 200, 1},
                {"L3", "A", "R1", 200, 1}};
  spec.peerings = {{"N1", "R1", "X1", 100}, {"N2", "R2", "X2", 50}};
  AggregatedTM tm;
  EgressAggregate agg;
  agg.id = "A0";
  agg.egress_set = MakeEgressSet({{"R1", "N1"}, {"R2", "N2"}});
  agg.attracted_volume = 120;
  tm.aggregates.push_back(agg);
  tm.hp[{"R0", "A0"}] = 120;

  Topology t = BuildTopology(spec);
  ExtendedTopology xt = ExtendTopology(t, spec.peerings, tm.aggregates);
  const Graph& g = xt.graph();
  auto run = [&](int alpha) {
    SearchConfig cfg;
    cfg.w_max = 20;
    cfg.iterations = 100;
    cfg.cost.alpha = alpha;
    LoadMap<Rational> loads =
        ComputeLoads<Rational>(xt, Optimize(xt, tm, cfg).weights, tm);
    return std::pair(UMax(loads, g, kIntraArcs), UMax(loads, g, kInterArcs));
  };
  auto [intra0, inter0] = run(0);
  auto [intra1, inter1] = run(1);
  std::ostringstream s;
  s << "alpha 0: intra " << intra0 << " inter " << inter0 << "; alpha 1: intra "
    << intra1 << " inter " << inter1;
  return {inter1 < inter0 && intra1 - intra0 <= Rational(5, 100), s.str()};
}

// 8. Blind optimization can end up worse than the deployed weights.
Outcome BlindFailureMode() {
  Instance toy = ToyInstance();
  Topology t = BuildTopology(toy.topology);
  ExtendedTopology xt =
      ExtendTopology(t, toy.topology.peerings, toy.tm.aggregates);
  const Graph& g = xt.graph();
  Rational unoptimized = UMax(
      SimulateHotPotato<Rational>(xt, t.FileWeights(), toy.tm), g, kIntraArcs);
  Rational resulting = UMax(
      SimulateHotPotato<Rational>(xt, ToyWeights(2, 1, 1), toy.tm), g,
      kIntraArcs);
  std::ostringstream s;
  s << "resulting " << resulting << " vs unoptimized " << unoptimized;
  return {resulting == Rational(5, 8) && unoptimized == Rational(1, 2) &&
              resulting > unoptimized,
          s.str()};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Same seed and inputs give byte-identical files, sequential or parallel.
Outcome Determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hplwo_acceptance";
  fs::remove_all(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  std::ostringstream sink;
  bool ok = RunCli({"gen", "random", "--seed", "42", "--out", p("in")}, sink,
                   sink) == 0 &&
            RunCli({"gen", "batch", "--tm", p("in/tm.txt"), "--count", "6",
                    "--out", p("batch")},
                   sink, sink) == 0;
  const std::vector<std::string> files = {"opt/weights.txt", "opt/trace.csv",
                                          "cmp/report.csv", "cmp/histogram.csv",
                                          "cmp/cdf_bgp-aware.csv"};
  std::vector<std::string> first;
  int identical = 0;
  for (const char* threads : {"1", "4"}) {
    std::string out = p(std::string("run") + threads);
    std::vector<std::string> compare = {"compare", "--topology",
                                        p("in/topology.txt"), "--seed", "9",
                                        "--threads", threads, "--out",
                                        out + "/cmp"};
    for (int i = 0; i < 6; ++i) {
      compare.push_back("--tm");
      compare.push_back(p(fmt::format("batch/tm_{:04d}.txt", i)));
    }
    ok = ok &&
         RunCli({"optimize", "--topology", p("in/topology.txt"), "--tm",
                 p("in/tm.txt"), "--seed", "9", "--threads", threads, "--out",
                 out + "/opt"},
                sink, sink) == 0 &&
         RunCli(compare, sink, sink) == 0;
    for (size_t f = 0; f < files.size(); ++f) {
      std::string content = Slurp(out + "/" + files[f]);
      if (first.size() < files.size()) {
        first.push_back(content);
      } else if (content == first[f] && !content.empty()) {
        ++identical;
      }
    }
  }
  fs::remove_all(dir);
  return {ok && identical == static_cast<int>(files.size()),
          fmt::format("{}/{} files identical across 1 and 4 threads",
                      identical, files.size())};
}

}  // namespace
}  // namespace hplwo

int main() {
  using hplwo::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {{"toy reproduction", hplwo::ToyReproduction},
       {"self-consistency", hplwo::SelfConsistency},
       {"folding equivalence", hplwo::FoldingEquivalence},
       {"optimality oracles", hplwo::OptimalityOracles},
       {"brute-force optimizer check", hplwo::BruteForceOptimizer},
       {"aggregation and coverage", hplwo::AggregationCoverage},
       {"interdomain TE property", hplwo::InterdomainProperty},
       {"blind optimization failure mode", hplwo::BlindFailureMode},
       {"determinism", hplwo::Determinism}};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
