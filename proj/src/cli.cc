#include "hplwo/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hplwo/bgp_classifier.h"
#include "hplwo/error.h"
#include "hplwo/formats.h"
#include "hplwo/hp_simulator.h"
#include "hplwo/lwo.h"
#include "hplwo/net_model.h"
#include "hplwo/synthetic.h"
#include "hplwo/tm_pipeline.h"

namespace hplwo {
namespace {

namespace fs = std::filesystem;

// Missing or unwritable files; reported with exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  uint64_t seed = 1;
  std::string alpha = "0";
  std::string coverage = "0.999";
  int iterations = 50;
  int wmax = 150;
  bool symmetric = true;
  bool simplify = false;
  std::string tie_break = "multipath";
  std::string out_dir = ".";
  int threads = 1;
  bool timing = false;

  std::string topology;
  std::string routes;
  std::string flows;
  std::string classification;
  std::string weights;
  std::vector<std::string> tms;
  std::string init = "unit";
  std::string modes = "optimistic,resulting,bgp-aware";
  bool utilization = false;
  std::string capacity_map;
  std::string factor = "1";
  std::string kind;
  size_t count = 100;
  size_t prefixes = 160973;
  size_t hot_potato = 156407;
  std::string share = "0.356";
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <typename F>
auto ParseFile(const std::string& path, F parse) {
  std::istringstream in(ReadFile(path));
  return parse(in, path);
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  }

  template <typename F>
  std::string Write(const std::string& name, F write) const {
    fs::path path = dir_ / name;
    std::ostringstream text;
    write(text);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text.str();
    if (!out.flush()) throw IoError("cannot write '" + path.string() + "'");
    return path.string();
  }

 private:
  fs::path dir_;
};

Rational RationalOption(const std::string& name, const std::string& text) {
  try {
    return ParseRational(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError("--" + name + ": not a number: '" + text + "'");
  }
}

TieBreak ParseTieBreak(const std::string& text) {
  if (text == "multipath") return TieBreak::kMultipath;
  if (text == "lowest-id") return TieBreak::kLowestId;
  throw ConfigError("--tie-break must be multipath or lowest-id");
}

SearchConfig MakeSearchConfig(const Options& o) {
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.iterations = o.iterations;
  cfg.w_max = o.wmax;
  cfg.symmetric = o.symmetric;
  cfg.threads = o.threads;
  cfg.cost.alpha = RationalOption("alpha", o.alpha);
  if (o.init == "unit") {
    cfg.initial = InitialStrategy::kUnit;
  } else if (o.init == "inverse-capacity") {
    cfg.initial = InitialStrategy::kInverseCapacity;
  } else if (o.init == "given") {
    cfg.initial = InitialStrategy::kGiven;
  } else {
    throw ConfigError("--init must be unit, inverse-capacity or given");
  }
  cfg.Validate();
  return cfg;
}

std::string FileHash(const std::vector<std::string>& paths) {
  uint64_t h = Fnv1a("");
  for (const std::string& p : paths) {
    if (p.empty()) continue;
    h = Fnv1a(ReadFile(p), h);
  }
  return fmt::format("{:016x}", h);
}

std::string Percent(const Rational& fraction) {
  return fmt::format("{:.1f}%", ToDouble(fraction) * 100);
}

struct LoadedInstance {
  TopologySpec spec;
  Topology topology;
};

LoadedInstance LoadTopology(const std::string& path) {
  LoadedInstance inst;
  inst.spec = ParseFile(path, ParseTopology);
  inst.topology = BuildTopology(inst.spec);
  return inst;
}

WeightVector DeployedWeights(const Options& o, const Topology& topology) {
  if (o.weights.empty()) return topology.FileWeights();
  return ParseFile(o.weights, [&](std::istream& in, const std::string& src) {
    return ParseWeights(in, src, topology);
  });
}

std::string TmId(const std::string& path) {
  return fs::path(path).stem().string();
}

int CmdClassify(const Options& o, std::ostream& out, std::ostream&) {
  std::optional<TopologySpec> spec;
  if (!o.topology.empty()) spec = ParseFile(o.topology, ParseTopology);
  std::vector<RouteRecord> routes =
      ParseFile(o.routes, [&](std::istream& in, const std::string& src) {
        return ParseRouteDump(in, src, spec ? &*spec : nullptr);
      });
  PrefixClassification cls = ClassifyPrefixes(routes);

  OutputDir dir(o.out_dir);
  Metadata meta = {{"command", "classify"},
                   {"input", FileHash({o.routes, o.topology})}};
  std::string path = dir.Write("classification.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteClassification(f, cls);
  });
  out << "prefixes: " << cls.size() << "\n";
  out << "hot-potato: " << cls.hot_potato.size() << "\n";
  out << "single-egress: " << cls.single_egress.size() << "\n";
  if (!o.flows.empty()) {
    std::vector<FlowRecord> flows = ParseFile(o.flows, ParseFlows);
    Rational total = 0, hp = 0;
    for (const FlowRecord& f : flows) {
      total += f.volume;
      if (cls.hot_potato.count(f.prefix)) hp += f.volume;
    }
    if (total > 0) out << "hot-potato traffic share: " << Percent(hp / total) << "\n";
  }
  out << "wrote " << path << "\n";
  return kExitOk;
}

int CmdBuildTm(const Options& o, std::ostream& out, std::ostream& err) {
  LoadedInstance inst = LoadTopology(o.topology);
  PrefixClassification cls;
  if (!o.classification.empty()) {
    cls = ParseFile(o.classification, ParseClassification);
  } else if (!o.routes.empty()) {
    cls = ClassifyPrefixes(
        ParseFile(o.routes, [&](std::istream& in, const std::string& src) {
          return ParseRouteDump(in, src, &inst.spec);
        }));
  } else {
    throw ConfigError("build-tm needs --routes or --classification");
  }
  std::vector<FlowRecord> flows = ParseFile(o.flows, ParseFlows);
  if (flows.empty()) err << "warning: no flow records in '" << o.flows << "'\n";

  Rational coverage = RationalOption("coverage", o.coverage);
  std::vector<EgressAggregate> aggregates = AggregateByEgressSet(cls);
  AttachVolumes(aggregates, cls, flows);
  TruncationResult split = TruncateAggregates(aggregates, coverage);
  AggregatedTM tm =
      BuildAggregatedTM(flows, cls, split.kept, split.remainder, inst.topology,
                        DeployedWeights(o, inst.topology));

  Rational hp_total = 0, kept_total = 0;
  for (const EgressAggregate& a : aggregates) hp_total += a.attracted_volume;
  for (const EgressAggregate& a : split.kept) kept_total += a.attracted_volume;

  OutputDir dir(o.out_dir);
  Metadata meta = {{"command", "build-tm"},
                   {"instance", InstanceHash(inst.spec, tm)},
                   {"input", FileHash({o.topology, o.routes, o.classification,
                                       o.flows, o.weights})},
                   {"coverage", FormatRational(coverage)}};
  std::string path = dir.Write("tm.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteAggregatedTM(f, tm);
  });
  out << "aggregates: " << aggregates.size() << "\n";
  out << "kept: " << split.kept.size() << "\n";
  out << "coverage achieved: "
      << (hp_total > 0 ? Percent(kept_total / hp_total) : std::string("n/a"))
      << "\n";
  out << "wrote " << path << "\n";
  return kExitOk;
}

int CmdOptimize(const Options& o, std::ostream& out, std::ostream&) {
  LoadedInstance inst = LoadTopology(o.topology);
  if (o.tms.size() != 1) throw ConfigError("optimize takes exactly one --tm");
  AggregatedTM tm = ParseFile(o.tms[0], ParseAggregatedTM);
  SearchConfig cfg = MakeSearchConfig(o);
  if (cfg.initial == InitialStrategy::kGiven) {
    if (o.weights.empty()) throw ConfigError("--init given needs --weights");
    cfg.given = DeployedWeights(o, inst.topology);
  }
  ExtendedTopology xt =
      ExtendTopology(inst.topology, inst.spec.peerings, tm.aggregates);
  if (o.simplify) {
    if (cfg.cost.alpha != 0) {
      throw ConfigError("--simplify drops interdomain links; it needs alpha 0");
    }
    xt = SimplifyModel(xt);
  }
  SearchResult result = Optimize(xt, tm, cfg);

  ExtendedTopology full =
      ExtendTopology(inst.topology, inst.spec.peerings, tm.aggregates);
  LoadMap<Rational> loads = ComputeLoads<Rational>(full, result.weights, tm);

  Metadata meta = {{"command", "optimize"},
                   {"instance", InstanceHash(inst.spec, tm)}};
  Metadata params = SearchMetadata(cfg);
  meta.insert(meta.end(), params.begin(), params.end());
  meta.push_back({"simplify", o.simplify ? "true" : "false"});

  OutputDir dir(o.out_dir);
  dir.Write("weights.txt", [&](std::ostream& f) {
    WriteWeights(f, inst.topology, result.weights, meta);
  });
  dir.Write("trace.csv",
            [&](std::ostream& f) { WriteTrace(f, result.trace, meta); });
  out << "cost: " << FormatDouble(result.cost) << "\n";
  out << "umax_intra: "
      << FormatRational(UMax(loads, full.graph(), kIntraArcs)) << "\n";
  out << "umax_inter: "
      << FormatRational(UMax(loads, full.graph(), kInterArcs)) << "\n";
  out << "wrote " << (fs::path(o.out_dir) / "weights.txt").string() << ", "
      << (fs::path(o.out_dir) / "trace.csv").string() << "\n";
  return kExitOk;
}

// Runs fn(i) for every TM, on up to `threads` workers; results keep input
// order.
template <typename F>
std::vector<EvalReport> ForEachTm(size_t count, int threads, F fn) {
  std::vector<EvalReport> reports(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](size_t first, size_t stride) {
    for (size_t i = first; i < count; i += stride) {
      try {
        reports[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  size_t workers = std::min<size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

void WriteEvaluationOutputs(const Options& o, const LoadedInstance& inst,
                            const std::vector<EvalReport>& reports,
                            const Metadata& meta, std::ostream& out) {
  OutputDir dir(o.out_dir);
  dir.Write("report.csv",
            [&](std::ostream& f) { WriteReport(f, reports, meta); });

  std::vector<Mode> modes;
  for (const EvalReport& r : reports) {
    for (const ModeResult& m : r.modes) {
      if (std::find(modes.begin(), modes.end(), m.mode) == modes.end()) {
        modes.push_back(m.mode);
      }
    }
  }
  std::vector<std::pair<std::string, std::vector<size_t>>> histogram;
  for (Mode mode : modes) {
    std::vector<double> values;
    for (const EvalReport& r : reports) {
      if (const ModeResult* m = r.Find(mode)) values.push_back(m->umax_intra);
    }
    std::string name = ToString(mode);
    Metadata cdf_meta = meta;
    cdf_meta.push_back({"metric", "umax_intra"});
    dir.Write("cdf_" + name + ".csv",
              [&](std::ostream& f) { WriteCdf(f, Cdf(values), cdf_meta); });
    histogram.emplace_back(name, UtilizationHistogram(values));
  }
  dir.Write("histogram.csv",
            [&](std::ostream& f) { WriteHistogram(f, histogram, meta); });
  if (o.utilization) {
    ExtendedTopology blind =
        ExtendTopology(inst.topology, inst.spec.peerings, {});
    dir.Write("utilization.csv", [&](std::ostream& f) {
      WriteUtilizations(f, blind, reports, meta);
    });
  }

  for (const EvalReport& r : reports) {
    for (const ModeResult& m : r.modes) {
      out << fmt::format("{} {} umax_intra={} umax_inter={} phi={}\n", r.tm_id,
                         ToString(m.mode), FormatDouble(m.umax_intra),
                         FormatDouble(m.umax_inter), FormatDouble(m.phi_total));
    }
  }
  out << "wrote " << (fs::path(o.out_dir) / "report.csv").string() << "\n";
}

std::vector<AggregatedTM> LoadTms(const Options& o) {
  if (o.tms.empty()) throw ConfigError("at least one --tm is required");
  std::vector<AggregatedTM> tms;
  for (const std::string& path : o.tms) {
    tms.push_back(ParseFile(path, ParseAggregatedTM));
  }
  return tms;
}

std::string BatchHash(const TopologySpec& spec,
                      const std::vector<AggregatedTM>& tms) {
  if (tms.size() == 1) return InstanceHash(spec, tms[0]);
  uint64_t h = Fnv1a("");
  for (const AggregatedTM& tm : tms) h = Fnv1a(InstanceHash(spec, tm), h);
  return fmt::format("{:016x}", h);
}

int CmdEvaluate(const Options& o, std::ostream& out, std::ostream&) {
  LoadedInstance inst = LoadTopology(o.topology);
  std::vector<AggregatedTM> tms = LoadTms(o);
  if (o.weights.empty()) throw ConfigError("evaluate needs --weights");
  WeightVector w = DeployedWeights(o, inst.topology);
  EvalConfig cfg;
  cfg.search = MakeSearchConfig(o);
  cfg.tie_break = ParseTieBreak(o.tie_break);

  std::vector<EvalReport> reports =
      ForEachTm(tms.size(), o.threads, [&](size_t i) {
        ExtendedTopology xt =
            ExtendTopology(inst.topology, inst.spec.peerings, tms[i].aggregates);
        return EvaluateWeights(TmId(o.tms[i]), xt, tms[i], w, cfg);
      });
  Metadata meta = {{"command", "evaluate"},
                   {"instance", BatchHash(inst.spec, tms)},
                   {"weights", FileHash({o.weights})},
                   {"alpha", FormatRational(cfg.search.cost.alpha)},
                   {"cost_segments", cfg.search.cost.FormatSegments()},
                   {"tie_break", o.tie_break}};
  WriteEvaluationOutputs(o, inst, reports, meta, out);
  return kExitOk;
}

int CmdCompare(const Options& o, std::ostream& out, std::ostream&) {
  LoadedInstance inst = LoadTopology(o.topology);
  std::vector<AggregatedTM> tms = LoadTms(o);
  WeightVector deployed = DeployedWeights(o, inst.topology);
  EvalConfig cfg;
  cfg.search = MakeSearchConfig(o);
  cfg.tie_break = ParseTieBreak(o.tie_break);
  cfg.simplify = o.simplify;
  cfg.record_time = o.timing;
  cfg.optimistic = cfg.resulting = cfg.bgp_aware = false;
  std::stringstream modes(o.modes);
  for (std::string m; std::getline(modes, m, ',');) {
    if (m == "optimistic") {
      cfg.optimistic = true;
    } else if (m == "resulting") {
      cfg.resulting = true;
    } else if (m == "bgp-aware") {
      cfg.bgp_aware = true;
    } else {
      throw ConfigError("unknown mode '" + m + "'");
    }
  }
  // Several TMs: parallel across TMs. One TM: parallel inside the search.
  int tm_threads = tms.size() > 1 ? o.threads : 1;
  if (tms.size() > 1) cfg.search.threads = 1;

  std::vector<EvalReport> reports = ForEachTm(tms.size(), tm_threads, [&](size_t i) {
    ExtendedTopology xt =
        ExtendTopology(inst.topology, inst.spec.peerings, tms[i].aggregates);
    return EvaluateModes(TmId(o.tms[i]), xt, tms[i], deployed, cfg);
  });
  Metadata meta = {{"command", "compare"},
                   {"instance", BatchHash(inst.spec, tms)},
                   {"deployed_weights",
                    o.weights.empty() ? std::string("topology file")
                                      : FileHash({o.weights})},
                   {"tie_break", o.tie_break},
                   {"modes", o.modes}};
  Metadata params = SearchMetadata(cfg.search);
  meta.insert(meta.end(), params.begin(), params.end());
  meta.push_back({"simplify", o.simplify ? "true" : "false"});
  WriteEvaluationOutputs(o, inst, reports, meta, out);
  return kExitOk;
}

int CmdScale(const Options& o, std::ostream& out, std::ostream&) {
  TopologySpec spec = ParseFile(o.topology, ParseTopology);
  if (o.tms.size() != 1) throw ConfigError("scale takes exactly one --tm");
  AggregatedTM tm = ParseFile(o.tms[0], ParseAggregatedTM);
  std::map<Rational, Rational> capacity_map;
  std::stringstream entries(o.capacity_map);
  for (std::string entry; std::getline(entries, entry, ',');) {
    size_t colon = entry.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("--map entries look like 155:622, got '" + entry + "'");
    }
    capacity_map[RationalOption("map", entry.substr(0, colon))] =
        RationalOption("map", entry.substr(colon + 1));
  }
  auto [scaled_spec, scaled_tm] = ScaleInstance(
      spec, tm, capacity_map, RationalOption("factor", o.factor));
  BuildTopology(scaled_spec);

  Metadata meta = {{"command", "scale"},
                   {"source_instance", InstanceHash(spec, tm)},
                   {"instance", InstanceHash(scaled_spec, scaled_tm)},
                   {"capacity_map", o.capacity_map.empty() ? "identity" : o.capacity_map},
                   {"factor", o.factor}};
  OutputDir dir(o.out_dir);
  dir.Write("topology.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteTopology(f, scaled_spec);
  });
  dir.Write("tm.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteAggregatedTM(f, scaled_tm);
  });
  out << "wrote " << (fs::path(o.out_dir) / "topology.txt").string() << ", "
      << (fs::path(o.out_dir) / "tm.txt").string() << "\n";
  return kExitOk;
}

void WriteRaw(const OutputDir& dir, const RawInstance& raw,
              const Metadata& meta) {
  dir.Write("topology.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteTopology(f, raw.topology);
  });
  dir.Write("routes.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteRouteDump(f, raw.routes);
  });
  dir.Write("flows.txt", [&](std::ostream& f) {
    WriteMetadata(f, meta);
    WriteFlows(f, raw.flows);
  });
}

int CmdGen(const Options& o, std::ostream& out, std::ostream&) {
  OutputDir dir(o.out_dir);
  Metadata meta = {{"command", "gen " + o.kind}, {"seed", std::to_string(o.seed)}};
  if (o.kind == "toy") {
    RawInstance raw = ToyPipeline();
    Instance inst = ToyInstance();
    meta.push_back({"instance", InstanceHash(inst.topology, inst.tm)});
    WriteRaw(dir, raw, meta);
    dir.Write("tm.txt", [&](std::ostream& f) {
      WriteMetadata(f, meta);
      WriteAggregatedTM(f, inst.tm);
    });
  } else if (o.kind == "random") {
    Instance inst = RandomInstance(o.seed);
    meta.push_back({"instance", InstanceHash(inst.topology, inst.tm)});
    dir.Write("topology.txt", [&](std::ostream& f) {
      WriteMetadata(f, meta);
      WriteTopology(f, inst.topology);
    });
    dir.Write("tm.txt", [&](std::ostream& f) {
      WriteMetadata(f, meta);
      WriteAggregatedTM(f, inst.tm);
    });
  } else if (o.kind == "isp") {
    WriteRaw(dir, IspShapedPipeline(), meta);
  } else if (o.kind == "classification") {
    if (o.hot_potato > o.prefixes) {
      throw ConfigError("--hot-potato exceeds --prefixes");
    }
    ClassificationTruth truth{o.prefixes, o.hot_potato,
                              RationalOption("share", o.share)};
    if (truth.hp_share < 0 || truth.hp_share > 1) {
      throw ConfigError("--share must lie in [0, 1]");
    }
    meta.push_back({"prefixes", std::to_string(truth.prefixes)});
    meta.push_back({"hot_potato", std::to_string(truth.hot_potato)});
    meta.push_back({"hp_share", FormatRational(truth.hp_share)});
    WriteRaw(dir, ClassificationInstance(truth), meta);
  } else if (o.kind == "batch") {
    if (o.tms.size() != 1) throw ConfigError("gen batch needs one --tm");
    AggregatedTM base = ParseFile(o.tms[0], ParseAggregatedTM);
    std::vector<AggregatedTM> batch = TrafficBatch(base, o.count, o.seed);
    for (size_t i = 0; i < batch.size(); ++i) {
      Metadata m = meta;
      m.push_back({"base", FileHash({o.tms[0]})});
      m.push_back({"index", std::to_string(i)});
      dir.Write(fmt::format("tm_{:04d}.txt", i), [&](std::ostream& f) {
        WriteMetadata(f, m);
        WriteAggregatedTM(f, batch[i]);
      });
    }
  } else {
    throw ConfigError("unknown generator '" + o.kind +
                      "' (toy, random, isp, classification, batch)");
  }
  out << "wrote " << o.kind << " instance to " << o.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"IGP link weight optimization aware of BGP hot-potato routing",
               "hplwo"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--alpha", o.alpha, "Weight of interdomain links in the cost");
  app.add_option("--coverage", o.coverage,
                 "Share of hot-potato traffic kept as aggregates, in (0, 1]");
  app.add_option("--iterations", o.iterations, "Search iterations");
  app.add_option("--wmax", o.wmax, "Largest link weight");
  app.add_flag("--symmetric,!--asymmetric", o.symmetric,
               "One weight per link (default) or one per direction");
  app.add_flag("--simplify", o.simplify,
               "Search the simplified model (alpha must be 0)");
  app.add_option("--tie-break", o.tie_break, "multipath or lowest-id")
      ->check(CLI::IsMember({"multipath", "lowest-id"}));
  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--threads", o.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", o.timing, "Record wall time in reports");

  CLI::App* classify = app.add_subcommand("classify", "Classify prefixes");
  classify->add_option("--routes", o.routes, "Route dump")->required();
  classify->add_option("--topology", o.topology, "Validate against topology");
  classify->add_option("--flows", o.flows, "Report the hot-potato share");

  CLI::App* build = app.add_subcommand("build-tm", "Build the aggregated TM");
  build->add_option("--topology", o.topology, "Topology file")->required();
  build->add_option("--routes", o.routes, "Route dump");
  build->add_option("--classification", o.classification,
                    "Classification file");
  build->add_option("--flows", o.flows, "Flow file")->required();
  build->add_option("--weights", o.weights,
                    "Deployed weights (default: topology file)");

  CLI::App* optimize = app.add_subcommand("optimize", "Optimize link weights");
  optimize->add_option("--topology", o.topology, "Topology file")->required();
  optimize->add_option("--tm", o.tms, "Aggregated TM")->required();
  optimize->add_option("--init", o.init, "unit, inverse-capacity or given");
  optimize->add_option("--weights", o.weights, "Initial weights for --init given");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Loads of fixed weights on TMs");
  evaluate->add_option("--topology", o.topology, "Topology file")->required();
  evaluate->add_option("--tm", o.tms, "Aggregated TMs")->required();
  evaluate->add_option("--weights", o.weights, "Weights file")->required();
  evaluate->add_flag("--utilization", o.utilization, "Write utilization.csv");

  CLI::App* compare = app.add_subcommand(
      "compare", "Optimistic, resulting and BGP-aware optimization");
  compare->add_option("--topology", o.topology, "Topology file")->required();
  compare->add_option("--tm", o.tms, "Aggregated TMs")->required();
  compare->add_option("--weights", o.weights,
                      "Deployed weights (default: topology file)");
  compare->add_option("--modes", o.modes, "Comma-separated modes");
  compare->add_flag("--utilization", o.utilization, "Write utilization.csv");

  CLI::App* scale = app.add_subcommand("scale", "Scale capacities and demand");
  scale->add_option("--topology", o.topology, "Topology file")->required();
  scale->add_option("--tm", o.tms, "Aggregated TM")->required();
  scale->add_option("--map", o.capacity_map, "Capacity map, e.g. 155:622");
  scale->add_option("--factor", o.factor, "Demand factor");

  CLI::App* gen = app.add_subcommand("gen", "Generate synthetic instances");
  gen->add_option("kind", o.kind, "toy, random, isp, classification, batch")
      ->required();
  gen->add_option("--count", o.count, "TMs in a batch");
  gen->add_option("--tm", o.tms, "Base TM for a batch");
  gen->add_option("--prefixes", o.prefixes, "Prefixes (classification)");
  gen->add_option("--hot-potato", o.hot_potato,
                  "Hot-potato prefixes (classification)");
  gen->add_option("--share", o.share, "Hot-potato traffic share");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) return CmdClassify(o, out, err);
    if (*build) return CmdBuildTm(o, out, err);
    if (*optimize) return CmdOptimize(o, out, err);
    if (*evaluate) return CmdEvaluate(o, out, err);
    if (*compare) return CmdCompare(o, out, err);
    if (*scale) return CmdScale(o, out, err);
    if (*gen) return CmdGen(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnreachableError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hplwo
