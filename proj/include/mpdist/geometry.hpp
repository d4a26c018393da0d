#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpdist {

using Coord = std::int64_t;
/// Squared Euclidean distance. PointSet bounds keep every value <= 2^62.
using SqDist = std::int64_t;
using Point = std::vector<Coord>;
using PointView = std::span<const Coord>;

/// Largest coordinate magnitude accepted in dimension `dim`.
///
/// Chosen so that each squared coordinate difference is at most 2^62 / dim,
/// hence every squared distance in the set is at most 2^62.
Coord coord_bound(std::size_t dim);

/// Finite set of distinct integer points, stored row-major.
class PointSet {
public:
    explicit PointSet(std::size_t dim);
    PointSet(std::size_t dim, std::vector<Coord> flat);
    PointSet(std::size_t dim, const std::vector<Point>& points);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : flat_.size() / dim_; }
    bool empty() const { return flat_.empty(); }

    PointView operator[](std::size_t i) const { return {flat_.data() + i * dim_, dim_}; }
    std::span<const Coord> flat() const { return flat_; }

    /// Copy of the subset at the given indices, in the order given.
    PointSet subset(std::span<const std::size_t> indices) const;

    /// True when the point occurs in the set (linear scan).
    bool contains(PointView p) const;

    /// 64-bit FNV-1a over (dim, n, coordinates as little-endian int64).
    std::uint64_t fingerprint() const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    void validate() const;

    std::size_t dim_;
    std::vector<Coord> flat_;
};

/// Increasing partition p_1 <= ... <= p_q of the ambient dimension, every
/// part at least 2. Blocks are indexed from 0 in this API.
class Partition {
public:
    explicit Partition(std::vector<std::size_t> parts);

    /// Parses "2,3" (commas or 'x' as separators).
    static Partition parse(std::string_view text);

    std::size_t q() const { return parts_.size(); }
    std::size_t dim() const { return offsets_.back(); }
    std::size_t part(std::size_t i) const { return parts_.at(i); }
    std::size_t offset(std::size_t i) const { return offsets_.at(i); }
    const std::vector<std::size_t>& parts() const { return parts_; }
    /// Prefix sums; offsets()[i] .. offsets()[i+1] is block i. Size q+1.
    const std::vector<std::size_t>& offsets() const { return offsets_; }

    bool all_twos() const;
    std::string str() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::size_t> parts_;
    std::vector<std::size_t> offsets_;
};

/// Squared within-block distances, one entry per block.
struct DistanceTuple {
    std::vector<SqDist> values;

    std::size_t size() const { return values.size(); }
    bool is_zero() const;
    std::string str() const;

    friend bool operator==(const DistanceTuple&, const DistanceTuple&) = default;
    friend auto operator<=>(const DistanceTuple&, const DistanceTuple&) = default;
};

/// Coordinates of x in block i.
Point project(PointView x, const Partition& p, std::size_t block);

/// Exact squared Euclidean distance. Throws UsageError on dimension mismatch
/// and std::overflow_error if the sum leaves the 64-bit range.
SqDist sq_dist(PointView x, PointView y);

DistanceTuple dist_tuple(PointView x, PointView y, const Partition& p);

/// Image of the block-i projection, deduplicated, in first-occurrence order.
PointSet project_set(const PointSet& e, const Partition& p, std::size_t block);

/// Point-set file format:
///
///     # optional comments
///     dim=<d> n=<count>
///     x_1 ... x_d
///     ...
///
/// write_point_set emits the canonical form (no comments, single spaces, '\n').
void write_point_set(std::ostream& os, const PointSet& e);
std::string to_text(const PointSet& e);

/// Reads one set. Throws UsageError on malformed input.
PointSet read_point_set(std::istream& is);
PointSet parse_point_set(std::string_view text);
/// Reads consecutive sets until end of stream.
std::vector<PointSet> read_point_sets(std::istream& is);
PointSet load_point_set(const std::string& path);
void save_point_set(const std::string& path, const PointSet& e);

}  // namespace mpdist
