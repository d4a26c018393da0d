#pragma once

#include "mpdist/geometry.hpp"
#include "mpdist/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mpdist {

struct BSetOptions {
    bool include_diagonal = true;
    /// Worker threads for pair enumeration; output does not depend on it.
    unsigned threads = 1;
    /// Refuse instances with more than this many ordered pairs.
    std::uint64_t pair_budget = 2'000'000'000ULL;
};

/// The set B_p(E,F) of squared block-distance tuples and its multiplicity map.
///
/// Tuples are stored row-major in lexicographic order; nu[k] counts ordered
/// pairs (x, y) realizing tuple k.
struct DistanceTupleStats {
    Partition partition;
    std::vector<SqDist> values;
    std::vector<std::uint64_t> nu;
    /// |E| * |F|, independent of the diagonal convention.
    std::uint64_t total_pairs = 0;
    bool includes_diagonal = true;

    std::size_t q() const { return partition.q(); }
    std::size_t count() const { return nu.size(); }
    std::span<const SqDist> tuple_values(std::size_t k) const {
        return {values.data() + k * q(), q()};
    }
    DistanceTuple tuple(std::size_t k) const;
    std::vector<DistanceTuple> tuples() const;

    /// Multiplicity of t, 0 when absent (binary search).
    std::uint64_t multiplicity(const DistanceTuple& t) const;
    bool contains(const DistanceTuple& t) const { return multiplicity(t) != 0; }

    std::uint64_t sum_nu() const;
    std::uint64_t max_nu() const;

    /// Up to k entries ordered by descending nu, ties by ascending tuple.
    std::vector<std::pair<DistanceTuple, std::uint64_t>> top(std::size_t k) const;

    friend bool operator==(const DistanceTupleStats&, const DistanceTupleStats&) = default;
};

/// B_p(E,F). When E and F hold identical content the symmetric path is used
/// (each unordered pair enumerated once and counted twice).
DistanceTupleStats b_set(const PointSet& e, const PointSet& f, const Partition& p,
                         const BSetOptions& opts = {});
/// B_p(E) = B_p(E,E).
DistanceTupleStats b_set(const PointSet& e, const Partition& p, const BSetOptions& opts = {});

/// B_p for E = A_1 x ... x A_q from per-block distance sets, without
/// materializing E. Block i must have dimension p_i of a valid partition.
DistanceTupleStats b_set_product(std::span<const PointSet> blocks, const BSetOptions& opts = {});

/// Materializes A_1 x ... x A_q in lexicographic order (block 0 slowest).
PointSet product_set(std::span<const PointSet> blocks);

/// Distance classes of E x F as a single block.
struct QuadrupleCount {
    /// Sum of squared class sizes: #{(x,y,x',y') : |x-y| = |x'-y'|}.
    unsigned __int128 q_value = 0;
    /// (squared distance, ordered-pair multiplicity), ascending by distance.
    std::vector<std::pair<SqDist, std::uint64_t>> class_sizes;
    std::uint64_t total_pairs = 0;

    /// Sum over classes of 2 * C(m, 2), i.e. q_value - |E||F|.
    unsigned __int128 unordered_variant() const { return q_value - total_pairs; }
    std::size_t distinct() const { return class_sizes.size(); }
};

QuadrupleCount quadruple_count(const PointSet& e, const PointSet& f, const BSetOptions& opts = {});

/// (|E| |F|)^2 / Q(E,F); never exceeds the number of distinct distances.
Rational cs_lower_bound(const PointSet& e, const PointSet& f, const BSetOptions& opts = {});

struct ProjectionBounds {
    std::vector<std::size_t> delta_sizes;      // |Delta(pi_i(E))|, zero included
    std::vector<std::size_t> projected_sizes;  // |pi_i(E)| after deduplication
    std::size_t lower_bound = 0;               // max of delta_sizes
};

ProjectionBounds projection_bounds(const PointSet& e, const Partition& p,
                                   const BSetOptions& opts = {});

}  // namespace mpdist
