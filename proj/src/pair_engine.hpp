#pragma once

// Internal: exact tuple counting over all pairs of two point sets.

#include "mpdist/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mpdist::detail {

struct TupleCounts {
    std::size_t q = 0;
    std::vector<SqDist> values;  // row-major, lexicographically sorted
    std::vector<std::uint64_t> nu;
};

enum class CountMode { Dense, Sorted, Generic };

struct EngineConfig {
    /// Block boundaries over the coordinates, offsets.front() == 0 and
    /// offsets.back() == dim.
    std::vector<std::size_t> offsets;
    bool include_diagonal = true;
    unsigned threads = 1;
    std::uint64_t pair_budget = 0;
    /// Largest key space counted in a flat array per worker.
    std::uint64_t dense_limit = std::uint64_t{1} << 22;
    /// Target number of pairs per enumeration chunk.
    std::uint64_t chunk_pairs = std::uint64_t{1} << 21;
};

/// Counts dist tuples over E x F (or E x E when `f` is null, using the
/// symmetric enumeration). Output is independent of threads and chunking.
TupleCounts count_tuples(const PointSet& e, const PointSet* f, const EngineConfig& cfg);

/// Mode count_tuples would pick for the inputs; exposed for tests.
CountMode select_mode(const PointSet& e, const PointSet* f, const EngineConfig& cfg);

}  // namespace mpdist::detail
