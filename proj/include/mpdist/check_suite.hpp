#pragma once

#include "mpdist/bset.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpdist {

// Predicates shared by the suite and the tests. Each returns an error message
// when the property fails.

/// Sum of nu equals |E||F| minus the removed diagonal pairs.
std::optional<std::string> check_nu_sum(const DistanceTupleStats& s, std::uint64_t expected_sum);
/// distinct * Q >= (|E||F|)^2.
std::optional<std::string> check_cauchy_schwarz(const QuadrupleCount& qc);
/// Q from class sizes equals the literal four-loop count.
std::optional<std::string> check_quadruple_brute_force(const PointSet& e, const PointSet& f,
                                                       const QuadrupleCount& qc);

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = true;
    /// Report-only checks never fail the suite.
    bool report_only = false;
    std::string detail;
};

struct CheckReport {
    std::uint64_t seed = 0;
    std::vector<std::size_t> sizes;
    std::vector<CheckResult> results;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

struct CheckOptions {
    std::uint64_t seed = 1;
    /// Point counts of the random corpora.
    std::vector<std::size_t> sizes{8, 24, 64};
    /// Random instances per size.
    std::size_t instances = 6;
    /// Worker count compared against the single-worker result.
    unsigned threads = 4;
};

/// Runs every assertable invariant of every module over seeded corpora.
/// The report depends only on the options.
CheckReport check_suite(const CheckOptions& opts);

}  // namespace mpdist
