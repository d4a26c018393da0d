#pragma once

#include "mpdist/bset.hpp"
#include "mpdist/exponents.hpp"
#include "mpdist/generators.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mpdist {

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

/// Ordinary least squares of log(y) on log(x). Needs >= 3 points, all positive.
FitResult fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

struct Measurement {
    std::int64_t param = 0;  // ladder value that produced this instance
    std::size_t n = 0;
    std::size_t b_count = 0;
    double wall_seconds = 0;  // side channel; not part of deterministic output
};

/// Which generator parameter the ladder varies, and its values.
struct Ladder {
    std::string param;
    std::vector<std::int64_t> values;
};

struct ScanOptions {
    bool include_diagonal = false;
    unsigned threads = 1;
    std::uint64_t pair_budget = 100'000'000ULL;
    bool use_fast_path = true;
};

struct ScalingRun {
    GeneratorSpec spec;
    Ladder ladder;
    Partition partition;
    bool include_diagonal = false;
    bool two_set = false;
    bool fast_path = false;
    bool cross_validated = false;
    std::vector<Measurement> measurements;
    FitResult fit;
    std::vector<std::string> warnings;
};

/// Generates each ladder instance and measures |B_p|. Product-structured
/// kinds use b_set_product, checked against brute force at the smallest size.
/// Sizes over the pair budget truncate the ladder with a warning.
ScalingRun run_scaling(const GeneratorSpec& spec, const Partition& p, const Ladder& ladder,
                       const ScanOptions& opts = {});

enum class Verdict { ConsistentLowerBound, ViolatedLowerBound, MatchesGridUpper, DiffersFromGridUpper, NotApplicable };

std::string to_string(Verdict v);

struct VerdictRow {
    std::string key;
    Rational exponent;
    Verdict verdict = Verdict::NotApplicable;
    /// Ladder sizes where b_count < n^exponent / log2(n)^slack.
    std::size_t sizes_below = 0;
    std::string detail;
};

struct CompareOptions {
    /// Lower-bound predictions are divided by log2(n)^log_slack_power.
    double log_slack_power = 2.0;
    /// |slope - 2q/d| within this counts as matching the grid rate.
    double grid_tolerance = 0.15;
};

struct ComparisonReport {
    double measured_slope = 0;
    ExponentTable predicted;
    std::vector<VerdictRow> verdicts;
    std::string wording = "consistent at tested scale";
};

ComparisonReport compare(const ScalingRun& run, const ExponentTable& table, const CompareOptions& opts = {});

}  // namespace mpdist
