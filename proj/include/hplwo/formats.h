#ifndef HPLWO_FORMATS_H
#define HPLWO_FORMATS_H

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hplwo/hp_simulator.h"
#include "hplwo/lwo.h"
#include "hplwo/net_model.h"
#include "hplwo/traffic_matrix.h"

namespace hplwo {

// Ordered key/value pairs written as "# key: value" at the top of every
// output file. Parsers skip them as comments.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void WriteMetadata(std::ostream& out, const Metadata& meta);

// 64-bit FNV-1a over the canonical text of the topology and TM, as 16 hex
// digits. Insensitive to comments and line order in the input files.
std::string InstanceHash(const TopologySpec& spec, const AggregatedTM& tm);
uint64_t Fnv1a(std::string_view data, uint64_t seed = 14695981039346656037ull);

// Shortest text that reads back as the same double.
std::string FormatDouble(double value);

// Search parameters in metadata form: seed, iterations, alpha, cost
// segments, weight range and so on.
Metadata SearchMetadata(const SearchConfig& cfg);

// "weight <link_id> <w>" per link when both directions agree, otherwise
// "weight <link_id>:<src> <w>" per direction.
void WriteWeights(std::ostream& out, const Topology& topology,
                  const WeightVector& w, const Metadata& meta);

// Every intra arc must receive a weight in [1, inf). A bare link id sets
// both directions; "<link>:<src>" sets one.
WeightVector ParseWeights(std::istream& in, const std::string& source,
                          const Topology& topology);

// iteration,best_cost,current_cost,umax_intra,umax_inter
void WriteTrace(std::ostream& out, const std::vector<TraceRow>& trace,
                const Metadata& meta);

// tm_id,mode,umax_intra,umax_inter,phi_total,wall_ms; reports in order.
void WriteReport(std::ostream& out, const std::vector<EvalReport>& reports,
                 const Metadata& meta);

// value,fraction
void WriteCdf(std::ostream& out,
              const std::vector<std::pair<double, double>>& cdf,
              const Metadata& meta);

// mode,bin,count with bins "0-10" ... "90-100", ">=100" (percent).
void WriteHistogram(std::ostream& out,
                    const std::vector<std::pair<std::string,
                                                std::vector<size_t>>>& rows,
                    const Metadata& meta);

// tm_id,mode,arc,src,dst,kind,link,utilization for intra and inter arcs.
void WriteUtilizations(std::ostream& out, const ExtendedTopology& xt,
                       const std::vector<EvalReport>& reports,
                       const Metadata& meta);

}  // namespace hplwo

#endif  // HPLWO_FORMATS_H
