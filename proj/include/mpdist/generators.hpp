#pragma once

#include "mpdist/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mpdist {

/// Generators refuse to build sets larger than this.
inline constexpr std::size_t kDefaultPointBudget = 20'000'000;

/// splitmix64 stream; fully specified, so identical across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

/// {0, ..., m-1}^d in lexicographic order.
PointSet grid(std::size_t d, std::int64_t m, std::size_t point_budget = kDefaultPointBudget);

/// All v in Z^k with |v|^2 = r, lexicographic. May be empty.
PointSet lattice_sphere(std::size_t k, std::int64_t r);

/// E = sphere in block 0 padded with zeros, F = zeros then sphere in block 1.
/// Needs q = 2 and a nonempty sphere at r in both blocks.
std::pair<PointSet, PointSet> sphere_pair(const Partition& p, std::int64_t r);

/// Prefixes every point of `low` (dimension p_q) with the fixed coordinates
/// of blocks 0..q-2 (length d - p_q).
PointSet subspace_embed(const PointSet& low, const Partition& p, const std::vector<Coord>& fixed);

/// n distinct uniform points of {0..M-1}^d; duplicates are redrawn.
PointSet random_cube(std::size_t d, std::size_t n, std::int64_t M, std::uint64_t seed);

/// Grid scaled by 2J+1 with every coordinate shifted by a seeded offset in
/// [-J, J]; the (2J+1)-cells keep points distinct.
PointSet jittered_grid(std::size_t d, std::int64_t m, std::int64_t jitter, std::uint64_t seed,
                       std::size_t point_budget = kDefaultPointBudget);

/// Suggested radius with many two-square representations: 5^{2a}.
std::int64_t suggested_sphere_radius(unsigned a);

enum class GeneratorKind { Grid, SpherePair, LatticeSphere, RandomCube, JitteredGrid, SubspaceEmbed };

std::string to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(const std::string& s);

/// Kind plus integer parameters and a seed.
///
/// Parameters by kind:
///   grid            d, m
///   sphere_pair     R              (partition supplies the blocks)
///   lattice_sphere  k, R
///   random_cube     d, n, M
///   jittered_grid   d, m, J
///   subspace_embed  m [, fixed]    low set is grid(p_q, m); or n, M for a
///                                  random low set; prefix coordinates = fixed
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Grid;
    std::map<std::string, std::int64_t> params;
    std::uint64_t seed = 0;

    std::int64_t param(const std::string& name) const;
    std::int64_t param_or(const std::string& name, std::int64_t fallback) const;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct GeneratedInstance {
    PointSet e;
    /// Second set for two-set kinds (sphere_pair).
    std::optional<PointSet> f;
    /// Blocks A_1..A_q with e == product_set(blocks), when the kind is a
    /// block-aligned product for the partition.
    std::optional<std::vector<PointSet>> product_blocks;
};

/// Builds the instance; `p` is required by sphere_pair and subspace_embed and
/// used to derive product blocks where applicable.
GeneratedInstance generate(const GeneratorSpec& spec, const std::optional<Partition>& p,
                           std::size_t point_budget = kDefaultPointBudget);

}  // namespace mpdist
