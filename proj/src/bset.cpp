#include "mpdist/bset.hpp"

#include "mpdist/error.hpp"
#include "pair_engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mpdist {

namespace {

detail::EngineConfig engine_config(std::vector<std::size_t> offsets, const BSetOptions& opts) {
    detail::EngineConfig cfg;
    cfg.offsets = std::move(offsets);
    cfg.include_diagonal = opts.include_diagonal;
    cfg.threads = std::max(1u, opts.threads);
    cfg.pair_budget = opts.pair_budget;
    return cfg;
}

DistanceTupleStats to_stats(const Partition& p, detail::TupleCounts counts, std::uint64_t total,
                            bool diag) {
    return DistanceTupleStats{p, std::move(counts.values), std::move(counts.nu), total, diag};
}

void check_dims(const PointSet& e, const PointSet& f, const Partition& p) {
    if (e.dim() != p.dim() || f.dim() != p.dim()) {
        throw UsageError("point sets of dimension " + std::to_string(e.dim()) + "/" +
                         std::to_string(f.dim()) + " do not match partition " + p.str());
    }
}

}  // namespace

DistanceTuple DistanceTupleStats::tuple(std::size_t k) const {
    auto v = tuple_values(k);
    return DistanceTuple{{v.begin(), v.end()}};
}

std::vector<DistanceTuple> DistanceTupleStats::tuples() const {
    std::vector<DistanceTuple> out;
    out.reserve(count());
    for (std::size_t k = 0; k < count(); ++k) out.push_back(tuple(k));
    return out;
}

std::uint64_t DistanceTupleStats::multiplicity(const DistanceTuple& t) const {
    if (t.size() != q()) return 0;
    std::size_t lo = 0, hi = count();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto v = tuple_values(mid);
        auto cmp = std::lexicographical_compare_three_way(v.begin(), v.end(), t.values.begin(),
                                                          t.values.end());
        if (cmp == 0) return nu[mid];
        if (cmp < 0) lo = mid + 1;
        else hi = mid;
    }
    return 0;
}

std::uint64_t DistanceTupleStats::sum_nu() const {
    return std::accumulate(nu.begin(), nu.end(), std::uint64_t{0});
}

std::uint64_t DistanceTupleStats::max_nu() const {
    return nu.empty() ? 0 : *std::max_element(nu.begin(), nu.end());
}

std::vector<std::pair<DistanceTuple, std::uint64_t>> DistanceTupleStats::top(std::size_t k) const {
    std::vector<std::size_t> idx(count());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const std::size_t m = std::min(k, idx.size());
    // Index order is tuple order, so ties resolve to the smaller tuple.
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return nu[a] != nu[b] ? nu[a] > nu[b] : a < b;
                      });
    std::vector<std::pair<DistanceTuple, std::uint64_t>> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.emplace_back(tuple(idx[i]), nu[idx[i]]);
    return out;
}

DistanceTupleStats b_set(const PointSet& e, const PointSet& f, const Partition& p,
                         const BSetOptions& opts) {
    check_dims(e, f, p);
    const bool same = &e == &f || e == f;
    auto counts = detail::count_tuples(e, same ? nullptr : &f, engine_config(p.offsets(), opts));
    return to_stats(p, std::move(counts), static_cast<std::uint64_t>(e.size()) * f.size(),
                    opts.include_diagonal);
}

DistanceTupleStats b_set(const PointSet& e, const Partition& p, const BSetOptions& opts) {
    return b_set(e, e, p, opts);
}

PointSet product_set(std::span<const PointSet> blocks) {
    if (blocks.empty()) throw UsageError("product needs at least one block");
    std::size_t dim = 0;
    std::size_t n = 1;
    for (const auto& b : blocks) {
        if (b.empty()) throw UsageError("product block is empty");
        dim += b.dim();
        n *= b.size();
    }
    std::vector<Coord> flat;
    flat.reserve(n * dim);
    std::vector<std::size_t> idx(blocks.size(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            auto r = blocks[b][idx[b]];
            flat.insert(flat.end(), r.begin(), r.end());
        }
        for (std::size_t b = blocks.size(); b-- > 0;) {
            if (++idx[b] < blocks[b].size()) break;
            idx[b] = 0;
        }
    }
    return PointSet(dim, std::move(flat));
}

DistanceTupleStats b_set_product(std::span<const PointSet> blocks, const BSetOptions& opts) {
    if (blocks.empty()) throw UsageError("product needs at least one block");
    std::vector<std::size_t> parts;
    for (const auto& b : blocks) {
        if (b.empty()) throw UsageError("product block is empty");
        parts.push_back(b.dim());
    }
    Partition p(parts);

    std::vector<QuadrupleCount> per_block;
    unsigned __int128 n = 1;
    for (const auto& b : blocks) {
        per_block.push_back(quadruple_count(b, b, opts));
        n *= b.size();
    }
    if (n > (static_cast<unsigned __int128>(1) << 32)) {
        throw UsageError("product instance pair count exceeds 64 bits");
    }
    const unsigned __int128 total = n * n;
    if (total > std::numeric_limits<std::uint64_t>::max()) {
        throw UsageError("product instance pair count exceeds 64 bits");
    }

    DistanceTupleStats out{p, {}, {}, static_cast<std::uint64_t>(total), opts.include_diagonal};
    const std::size_t q = blocks.size();
    std::vector<std::size_t> idx(q, 0);
    while (true) {
        std::uint64_t m = 1;
        bool zero = true;
        for (std::size_t b = 0; b < q; ++b) {
            const auto& [dist, mult] = per_block[b].class_sizes[idx[b]];
            out.values.push_back(dist);
            m *= mult;
            zero = zero && dist == 0;
        }
        if (zero && !opts.include_diagonal) {
            // All-zero tuple is realized only by the n diagonal pairs.
            out.values.resize(out.values.size() - q);
        } else {
            out.nu.push_back(m);
        }
        std::size_t b = q;
        while (b-- > 0) {
            if (++idx[b] < per_block[b].class_sizes.size()) break;
            idx[b] = 0;
        }
        if (b == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

QuadrupleCount quadruple_count(const PointSet& e, const PointSet& f, const BSetOptions& opts) {
    if (e.dim() != f.dim()) throw UsageError("point sets have different dimensions");
    auto cfg = engine_config({0, e.dim()}, opts);
    cfg.include_diagonal = true;
    const bool same = &e == &f || e == f;
    auto counts = detail::count_tuples(e, same ? nullptr : &f, cfg);
    QuadrupleCount out;
    out.total_pairs = static_cast<std::uint64_t>(e.size()) * f.size();
    out.class_sizes.reserve(counts.nu.size());
    for (std::size_t k = 0; k < counts.nu.size(); ++k) {
        out.class_sizes.emplace_back(counts.values[k], counts.nu[k]);
        out.q_value += static_cast<unsigned __int128>(counts.nu[k]) * counts.nu[k];
    }
    return out;
}

Rational cs_lower_bound(const PointSet& e, const PointSet& f, const BSetOptions& opts) {
    if (e.empty() || f.empty()) throw UsageError("Cauchy-Schwarz bound needs nonempty sets");
    const auto qc = quadruple_count(e, f, opts);
    const unsigned __int128 pairs = qc.total_pairs;
    return Rational::from_wide(static_cast<__int128>(pairs * pairs), static_cast<__int128>(qc.q_value));
}

ProjectionBounds projection_bounds(const PointSet& e, const Partition& p, const BSetOptions& opts) {
    if (e.dim() != p.dim()) throw UsageError("point set does not match partition " + p.str());
    ProjectionBounds out;
    BSetOptions inner = opts;
    inner.include_diagonal = true;
    for (std::size_t i = 0; i < p.q(); ++i) {
        PointSet proj = project_set(e, p, i);
        out.projected_sizes.push_back(proj.size());
        out.delta_sizes.push_back(quadruple_count(proj, proj, inner).distinct());
        out.lower_bound = std::max(out.lower_bound, out.delta_sizes.back());
    }
    return out;
}

}  // namespace mpdist
