#pragma once

#include "mpdist/geometry.hpp"
#include "mpdist/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mpdist {

/// Block-i richness: R_i(x) is the number of points of E sharing x's block-i
/// coordinates (the size of x's fiber).
struct RichnessProfile {
    std::size_t block = 0;
    /// values[k] = R_i(E[k]).
    std::vector<std::uint64_t> values;
    /// fiber[k] = index of E[k]'s fiber; fibers are numbered by first occurrence.
    std::vector<std::size_t> fiber;
    std::vector<std::uint64_t> fiber_sizes;
    std::uint64_t max_value = 0;

    std::size_t fiber_count() const { return fiber_sizes.size(); }
};

RichnessProfile richness(const PointSet& e, const Partition& p, std::size_t block);

/// One dyadic class [low, high) with high == 2 * low.
struct DyadicClass {
    std::uint64_t low = 0;
    std::uint64_t high = 0;
    std::vector<std::size_t> indices;
};

/// Bins values into half-open classes [2^j, 2^{j+1}); only nonempty classes
/// are returned, ordered by j.
std::vector<DyadicClass> dyadic_classes(std::span<const std::uint64_t> values);

/// floor(log2(v)) + 1 for v >= 1: the number of dyadic classes up to v.
std::size_t dyadic_levels(std::uint64_t v);

struct RegularSubset {
    PointSet points;
    /// Lower end c of the selected class; every point has richness in [c, 2c).
    std::uint64_t richness_level = 0;
    std::uint64_t class_low = 0;
    std::uint64_t class_high = 0;
    /// Indices into the original set, ascending.
    std::vector<std::size_t> indices;
    std::size_t fiber_count = 0;
};

/// Largest fiber-closed richness-regular subset by point count (ties go to the
/// lower class).
RegularSubset extract_regular(const PointSet& e, const Partition& p, std::size_t block);

struct RichPoints {
    /// Distinct block-i images whose fiber size reaches the threshold.
    PointSet projected;
    std::uint64_t threshold = 1;
    std::size_t rich_count = 0;
    std::size_t projected_total = 0;
    /// Points of E lying over non-rich images.
    std::size_t points_over_nonrich = 0;
};

/// Rich projected points with threshold floor(n^{1-(q-1)alpha}), at least 1,
/// for alpha in [1/q, 1].
RichPoints rich_points(const PointSet& e, const Partition& p, std::size_t block, const Rational& alpha);

/// floor(n^{num/den}) computed exactly, for num >= 0 and den >= 1.
std::uint64_t floor_rational_power(std::uint64_t n, std::int64_t num, std::int64_t den);

struct HistogramRow {
    std::uint64_t class_low;
    std::uint64_t class_high;
    std::size_t fiber_count;
    std::size_t point_count;
};

/// Per dyadic class of fiber sizes: how many fibers and points fall in it.
std::vector<HistogramRow> richness_histogram(const RichnessProfile& profile);
void write_histogram_csv(std::ostream& os, const std::vector<HistogramRow>& rows);

}  // namespace mpdist
