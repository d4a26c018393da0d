#pragma once

#include "mpdist/adaptability.hpp"
#include "mpdist/bset.hpp"
#include "mpdist/exponents.hpp"
#include "mpdist/generators.hpp"
#include "mpdist/harness.hpp"
#include "mpdist/regularize.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace mpdist {

using nlohmann::json;

json partition_json(const Partition& p);
Partition partition_from_json(const json& j);

/// {"partition":[..],"count":K,"total_pairs":P,"includes_diagonal":b,
///  "sum_nu":S,"max_nu":M,"top_multiplicities":[[tuple,nu],...]}
json to_json(const DistanceTupleStats& s, std::size_t top_k = 10);
/// One tuple per row, last column nu.
void write_tuples_csv(std::ostream& os, const DistanceTupleStats& s);

json rational_json(const Rational& r);
json to_json(const ExponentTable& t);
ExponentTable exponent_table_from_json(const json& j);
/// Aligned plain-text table: key, p/q, decimal, kind, note.
std::string exponent_table_text(const ExponentTable& t);

json to_json(const GeneratorSpec& g);
GeneratorSpec generator_spec_from_json(const json& j);

/// Deterministic content only; wall times are excluded.
json to_json(const ScalingRun& r);
json to_json(const ComparisonReport& c);

json energy_json(const AdaptabilityResult& a, const Rational& min_sep, std::size_t kept, std::size_t removed);

/// Experiment config: {"generator":{...},"ladder":{"param":"m","values":[..]},
/// "partition":[..],"include_diagonal":false}
struct ScanConfig {
    GeneratorSpec spec;
    Ladder ladder;
    Partition partition{std::vector<std::size_t>{2}};
    std::optional<bool> include_diagonal;
};

ScanConfig scan_config_from_json(const json& j);
json to_json(const ScanConfig& c);

}  // namespace mpdist
