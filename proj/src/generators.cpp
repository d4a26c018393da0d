#include "mpdist/generators.hpp"

#include "mpdist/error.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

namespace mpdist {

namespace {

std::int64_t isqrt(std::int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

std::size_t checked_power(std::int64_t base, std::size_t exp, std::size_t budget) {
    unsigned __int128 n = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        n *= static_cast<unsigned __int128>(base);
        if (n > budget) {
            throw BudgetExceeded(std::to_string(base) + "^" + std::to_string(exp) +
                                 " points exceed the point budget of " + std::to_string(budget));
        }
    }
    return static_cast<std::size_t>(n);
}

void sphere_rec(std::size_t k, std::int64_t rem, std::vector<Coord>& cur, std::vector<Coord>& out) {
    if (k == 1) {
        const std::int64_t r = isqrt(rem);
        if (r * r != rem) return;
        for (std::int64_t v : {-r, r}) {
            cur.push_back(v);
            out.insert(out.end(), cur.begin(), cur.end());
            cur.pop_back();
            if (r == 0) break;
        }
        return;
    }
    const std::int64_t lim = isqrt(rem);
    for (std::int64_t v = -lim; v <= lim; ++v) {
        cur.push_back(v);
        sphere_rec(k - 1, rem - v * v, cur, out);
        cur.pop_back();
    }
}

struct PointHash {
    std::size_t operator()(const std::vector<Coord>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Coord c : v) {
            h ^= static_cast<std::uint64_t>(c);
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("SplitMix64::below needs bound > 0");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

PointSet grid(std::size_t d, std::int64_t m, std::size_t point_budget) {
    if (d < 1) throw UsageError("grid dimension must be positive");
    if (m < 1) throw UsageError("grid side must be positive");
    const std::size_t n = checked_power(m, d, point_budget);
    std::vector<Coord> flat(n * d);
    std::vector<Coord> cur(d, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(cur.begin(), cur.end(), flat.begin() + static_cast<std::ptrdiff_t>(i * d));
        for (std::size_t j = d; j-- > 0;) {
            if (++cur[j] < m) break;
            cur[j] = 0;
        }
    }
    return PointSet(d, std::move(flat));
}

PointSet lattice_sphere(std::size_t k, std::int64_t r) {
    if (k < 1) throw UsageError("sphere dimension must be positive");
    if (r < 0) throw UsageError("sphere squared radius must be non-negative");
    std::vector<Coord> cur, out;
    sphere_rec(k, r, cur, out);
    return PointSet(k, std::move(out));
}

std::pair<PointSet, PointSet> sphere_pair(const Partition& p, std::int64_t r) {
    if (p.q() != 2) throw UsageError("sphere_pair needs a two-block partition, got " + p.str());
    const std::size_t k = p.part(0);
    const std::size_t l = p.part(1);
    const PointSet s1 = lattice_sphere(k, r);
    const PointSet s2 = lattice_sphere(l, r);
    if (s1.empty() || s2.empty()) {
        throw UsageError("no integer points of squared norm " + std::to_string(r) + " in dimension " +
                         std::to_string(s1.empty() ? k : l) + "; try R = " +
                         std::to_string(suggested_sphere_radius(1)) + " or " +
                         std::to_string(suggested_sphere_radius(2)) +
                         " (products of primes = 1 mod 4 have many representations)");
    }
    std::vector<Coord> ef, ff;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        auto v = s1[i];
        ef.insert(ef.end(), v.begin(), v.end());
        ef.insert(ef.end(), l, 0);
    }
    for (std::size_t i = 0; i < s2.size(); ++i) {
        auto v = s2[i];
        ff.insert(ff.end(), k, 0);
        ff.insert(ff.end(), v.begin(), v.end());
    }
    return {PointSet(p.dim(), std::move(ef)), PointSet(p.dim(), std::move(ff))};
}

PointSet subspace_embed(const PointSet& low, const Partition& p, const std::vector<Coord>& fixed) {
    const std::size_t last = p.part(p.q() - 1);
    if (low.dim() != last) {
        throw UsageError("embedded set has dimension " + std::to_string(low.dim()) +
                         ", partition's last block has " + std::to_string(last));
    }
    const std::size_t prefix = p.dim() - last;
    if (fixed.size() != prefix) {
        throw UsageError("expected " + std::to_string(prefix) + " fixed coordinates, got " +
                         std::to_string(fixed.size()));
    }
    std::vector<Coord> flat;
    flat.reserve(low.size() * p.dim());
    for (std::size_t i = 0; i < low.size(); ++i) {
        auto v = low[i];
        flat.insert(flat.end(), fixed.begin(), fixed.end());
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return PointSet(p.dim(), std::move(flat));
}

PointSet random_cube(std::size_t d, std::size_t n, std::int64_t M, std::uint64_t seed) {
    if (d < 1) throw UsageError("dimension must be positive");
    if (M < 1) throw UsageError("coordinate range M must be positive");
    unsigned __int128 space = 1;
    for (std::size_t k = 0; k < d && space <= n; ++k) space *= static_cast<unsigned __int128>(M);
    if (n > space) {
        throw UsageError("cannot draw " + std::to_string(n) + " distinct points from {0.." +
                         std::to_string(M - 1) + "}^" + std::to_string(d));
    }
    SplitMix64 rng(seed);
    std::unordered_set<std::vector<Coord>, PointHash> seen;
    seen.reserve(n);
    std::vector<Coord> flat;
    flat.reserve(n * d);
    std::vector<Coord> cand(d);
    while (seen.size() < n) {
        for (auto& c : cand) c = static_cast<Coord>(rng.below(static_cast<std::uint64_t>(M)));
        if (seen.insert(cand).second) flat.insert(flat.end(), cand.begin(), cand.end());
    }
    return PointSet(d, std::move(flat));
}

PointSet jittered_grid(std::size_t d, std::int64_t m, std::int64_t jitter, std::uint64_t seed,
                       std::size_t point_budget) {
    if (jitter < 0) throw UsageError("jitter must be non-negative");
    PointSet base = grid(d, m, point_budget);
    const std::int64_t cell = 2 * jitter + 1;
    SplitMix64 rng(seed);
    std::vector<Coord> flat(base.flat().begin(), base.flat().end());
    for (auto& c : flat) {
        c = c * cell + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(cell))) - jitter;
    }
    return PointSet(d, std::move(flat));
}

std::int64_t suggested_sphere_radius(unsigned a) {
    std::int64_t r = 1;
    for (unsigned k = 0; k < 2 * a; ++k) r *= 5;
    return r;
}

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::Grid: return "grid";
        case GeneratorKind::SpherePair: return "sphere_pair";
        case GeneratorKind::LatticeSphere: return "lattice_sphere";
        case GeneratorKind::RandomCube: return "random_cube";
        case GeneratorKind::JitteredGrid: return "jittered_grid";
        case GeneratorKind::SubspaceEmbed: return "subspace_embed";
    }
    return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& s) {
    for (auto k : {GeneratorKind::Grid, GeneratorKind::SpherePair, GeneratorKind::LatticeSphere,
                   GeneratorKind::RandomCube, GeneratorKind::JitteredGrid, GeneratorKind::SubspaceEmbed}) {
        if (to_string(k) == s) return k;
    }
    throw UsageError("unknown generator kind '" + s + "'");
}

std::int64_t GeneratorSpec::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
        throw UsageError("generator '" + to_string(kind) + "' needs parameter '" + name + "'");
    }
    return it->second;
}

std::int64_t GeneratorSpec::param_or(const std::string& name, std::int64_t fallback) const {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

namespace {

std::size_t as_size(std::int64_t v, const char* name) {
    if (v < 0) throw UsageError(std::string("parameter '") + name + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

const Partition& need_partition(const std::optional<Partition>& p, GeneratorKind k) {
    if (!p) throw UsageError("generator '" + to_string(k) + "' needs a partition");
    return *p;
}

}  // namespace

GeneratedInstance generate(const GeneratorSpec& spec, const std::optional<Partition>& p,
                           std::size_t point_budget) {
    switch (spec.kind) {
        case GeneratorKind::Grid: {
            const std::size_t d = as_size(spec.param("d"), "d");
            const std::int64_t m = spec.param("m");
            GeneratedInstance out{grid(d, m, point_budget), std::nullopt, std::nullopt};
            if (p && p->dim() == d) {
                std::vector<PointSet> blocks;
                for (std::size_t i = 0; i < p->q(); ++i) blocks.push_back(grid(p->part(i), m, point_budget));
                out.product_blocks = std::move(blocks);
            }
            return out;
        }
        case GeneratorKind::SpherePair: {
            auto [e, f] = sphere_pair(need_partition(p, spec.kind), spec.param("R"));
            return {std::move(e), std::move(f), std::nullopt};
        }
        case GeneratorKind::LatticeSphere:
            return {lattice_sphere(as_size(spec.param("k"), "k"), spec.param("R")), std::nullopt, std::nullopt};
        case GeneratorKind::RandomCube: {
            const std::size_t d = as_size(spec.param("d"), "d");
            const std::size_t n = as_size(spec.param("n"), "n");
            if (n > point_budget) throw BudgetExceeded("random_cube n exceeds the point budget");
            return {random_cube(d, n, spec.param("M"), spec.seed), std::nullopt, std::nullopt};
        }
        case GeneratorKind::JitteredGrid:
            return {jittered_grid(as_size(spec.param("d"), "d"), spec.param("m"), spec.param("J"), spec.seed,
                                  point_budget),
                    std::nullopt, std::nullopt};
        case GeneratorKind::SubspaceEmbed: {
            const Partition& part = need_partition(p, spec.kind);
            const std::size_t last = part.part(part.q() - 1);
            PointSet low = spec.params.count("m")
                               ? grid(last, spec.param("m"), point_budget)
                               : random_cube(last, as_size(spec.param("n"), "n"), spec.param("M"), spec.seed);
            const Coord c = spec.param_or("fixed", 0);
            std::vector<Coord> fixed(part.dim() - last, c);
            GeneratedInstance out{subspace_embed(low, part, fixed), std::nullopt, std::nullopt};
            std::vector<PointSet> blocks;
            for (std::size_t i = 0; i + 1 < part.q(); ++i) {
                blocks.emplace_back(part.part(i), std::vector<Coord>(part.part(i), c));
            }
            blocks.push_back(std::move(low));
            out.product_blocks = std::move(blocks);
            return out;
        }
    }
    throw UsageError("unhandled generator kind");
}

}  // namespace mpdist
