#include "hplwo/formats.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "hplwo/error.h"
#include "hplwo/tm_pipeline.h"
#include "line_reader.h"

namespace hplwo {

void WriteMetadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
}

uint64_t Fnv1a(std::string_view data, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::vector<std::string> SortedLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace

std::string InstanceHash(const TopologySpec& spec, const AggregatedTM& tm) {
  std::ostringstream topo, matrix;
  WriteTopology(topo, spec);
  WriteAggregatedTM(matrix, tm);
  uint64_t h = Fnv1a("");
  for (const std::string& text : {topo.str(), matrix.str()}) {
    for (const std::string& line : SortedLines(text)) {
      h = Fnv1a(line, h);
      h = Fnv1a("\n", h);
    }
    h = Fnv1a("\f", h);
  }
  return fmt::format("{:016x}", h);
}

std::string FormatDouble(double value) {
  if (value == 0) return "0";
  return fmt::format("{}", value);
}

Metadata SearchMetadata(const SearchConfig& cfg) {
  const char* initial = cfg.initial == InitialStrategy::kUnit ? "unit"
                        : cfg.initial == InitialStrategy::kInverseCapacity
                            ? "inverse-capacity"
                            : "given";
  return {
      {"seed", std::to_string(cfg.seed)},
      {"iterations", std::to_string(cfg.iterations)},
      {"alpha", FormatRational(cfg.cost.alpha)},
      {"cost_segments", cfg.cost.FormatSegments()},
      {"cost_normalization", "load-denominated; thresholds on utilization"},
      {"weight_range", fmt::format("{}..{}", cfg.w_min, cfg.w_max)},
      {"symmetric", cfg.symmetric ? "true" : "false"},
      {"tabu_tenure", std::to_string(cfg.tabu_tenure)},
      {"sample_size", cfg.sample_size > 0 ? std::to_string(cfg.sample_size)
                                          : std::string("auto")},
      {"initial", initial},
  };
}

void WriteWeights(std::ostream& out, const Topology& topology,
                  const WeightVector& w, const Metadata& meta) {
  WriteMetadata(out, meta);
  const Graph& g = topology.graph();
  for (size_t l = 0; l < topology.links().size(); ++l) {
    auto [fwd, rev] = topology.LinkArcs(l);
    const std::string& id = topology.links()[l].id;
    if (w[fwd] == w[rev]) {
      out << "weight " << id << " " << w[fwd] << "\n";
    } else {
      out << "weight " << id << ":" << g.node(g.arc(fwd).src).id << " "
          << w[fwd] << "\n";
      out << "weight " << id << ":" << g.node(g.arc(rev).src).id << " "
          << w[rev] << "\n";
    }
  }
}

WeightVector ParseWeights(std::istream& in, const std::string& source,
                          const Topology& topology) {
  const Graph& g = topology.graph();
  std::map<std::string, size_t> link_index;
  for (size_t l = 0; l < topology.links().size(); ++l) {
    link_index[topology.links()[l].id] = l;
  }
  std::vector<int32_t> w(topology.num_intra_arcs(), 0);
  LineReader reader(in, source);
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f[0] != "weight") reader.Fail("unknown record '" + f[0] + "'");
    reader.ExpectFields(f, 3);
    long long value = reader.Integer(f[2]);
    if (value < 1 || value > std::numeric_limits<int32_t>::max()) {
      reader.Fail("weight must be a positive integer");
    }
    std::string link = f[1];
    std::string src;
    if (size_t colon = link.find(':'); colon != std::string::npos) {
      src = link.substr(colon + 1);
      link.resize(colon);
    }
    auto it = link_index.find(link);
    if (it == link_index.end()) reader.Fail("unknown link '" + link + "'");
    auto [fwd, rev] = topology.LinkArcs(it->second);
    bool matched = false;
    for (ArcIndex a : {fwd, rev}) {
      if (src.empty() || g.node(g.arc(a).src).id == src) {
        w[a] = static_cast<int32_t>(value);
        matched = true;
      }
    }
    if (!matched) {
      reader.Fail("'" + src + "' is not an endpoint of link '" + link + "'");
    }
  }
  for (ArcIndex a = 0; a < w.size(); ++a) {
    if (w[a] == 0) {
      throw InputError(source + ": no weight for link '" + g.arc(a).link_id +
                       "' direction " + g.node(g.arc(a).src).id);
    }
  }
  return WeightVector(std::move(w));
}

void WriteTrace(std::ostream& out, const std::vector<TraceRow>& trace,
                const Metadata& meta) {
  WriteMetadata(out, meta);
  out << "iteration,best_cost,current_cost,umax_intra,umax_inter\n";
  for (const TraceRow& r : trace) {
    out << r.iteration << "," << FormatDouble(r.best_cost) << ","
        << FormatDouble(r.current_cost) << "," << FormatDouble(r.umax_intra)
        << "," << FormatDouble(r.umax_inter) << "\n";
  }
}

void WriteReport(std::ostream& out, const std::vector<EvalReport>& reports,
                 const Metadata& meta) {
  WriteMetadata(out, meta);
  out << "tm_id,mode,umax_intra,umax_inter,phi_total,wall_ms\n";
  for (const EvalReport& report : reports) {
    for (const ModeResult& m : report.modes) {
      out << report.tm_id << "," << ToString(m.mode) << ","
          << FormatDouble(m.umax_intra) << "," << FormatDouble(m.umax_inter)
          << "," << FormatDouble(m.phi_total) << ","
          << fmt::format("{:.3f}", m.wall_ms) << "\n";
    }
  }
}

void WriteCdf(std::ostream& out,
              const std::vector<std::pair<double, double>>& cdf,
              const Metadata& meta) {
  WriteMetadata(out, meta);
  out << "value,fraction\n";
  for (const auto& [value, fraction] : cdf) {
    out << FormatDouble(value) << "," << FormatDouble(fraction) << "\n";
  }
}

void WriteHistogram(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::vector<size_t>>>& rows,
    const Metadata& meta) {
  WriteMetadata(out, meta);
  out << "mode,bin,count\n";
  for (const auto& [mode, bins] : rows) {
    for (size_t b = 0; b < bins.size(); ++b) {
      std::string label = b + 1 < bins.size()
                              ? fmt::format("{}-{}", 10 * b, 10 * (b + 1))
                              : fmt::format(">={}", 10 * b);
      out << mode << "," << label << "," << bins[b] << "\n";
    }
  }
}

void WriteUtilizations(std::ostream& out, const ExtendedTopology& xt,
                       const std::vector<EvalReport>& reports,
                       const Metadata& meta) {
  const Graph& g = xt.graph();
  WriteMetadata(out, meta);
  out << "tm_id,mode,arc,src,dst,kind,link,utilization\n";
  for (const EvalReport& report : reports) {
    for (const ModeResult& m : report.modes) {
      for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
        const Arc& arc = g.arc(a);
        if (arc.kind == ArcKind::kVirtual) continue;
        double u = a < m.utilization.size() ? m.utilization[a] : 0.0;
        out << report.tm_id << "," << ToString(m.mode) << "," << a << ","
            << g.node(arc.src).id << "," << g.node(arc.dst).id << ","
            << ToString(arc.kind) << "," << arc.link_id << ","
            << FormatDouble(u) << "\n";
      }
    }
  }
}

}  // namespace hplwo
