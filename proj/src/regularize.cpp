#include "mpdist/regularize.hpp"

#include "mpdist/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>

namespace mpdist {

RichnessProfile richness(const PointSet& e, const Partition& p, std::size_t block) {
    if (e.dim() != p.dim()) throw UsageError("point set does not match partition " + p.str());
    if (block >= p.q()) throw UsageError("block index out of range for partition " + p.str());
    const std::size_t lo = p.offset(block);
    const std::size_t len = p.part(block);
    const std::size_t n = e.size();
    auto key = [&](std::size_t i) { return e[i].subspan(lo, len); };

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::ranges::lexicographical_compare(key(a), key(b));
    });

    RichnessProfile prof;
    prof.block = block;
    prof.values.assign(n, 0);
    prof.fiber.assign(n, 0);
    // Group runs of equal images; number fibers by their first member in input order.
    std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> runs;  // first idx, [b,e)
    for (std::size_t k = 0; k < n;) {
        std::size_t j = k + 1;
        while (j < n && std::ranges::equal(key(order[k]), key(order[j]))) ++j;
        runs.push_back({order[k], {k, j}});  // stable sort: order[k] is the smallest index
        k = j;
    }
    std::sort(runs.begin(), runs.end());
    for (std::size_t f = 0; f < runs.size(); ++f) {
        auto [b, en] = runs[f].second;
        const auto size = static_cast<std::uint64_t>(en - b);
        prof.fiber_sizes.push_back(size);
        prof.max_value = std::max(prof.max_value, size);
        for (std::size_t k = b; k < en; ++k) {
            prof.values[order[k]] = size;
            prof.fiber[order[k]] = f;
        }
    }
    return prof;
}

std::size_t dyadic_levels(std::uint64_t v) {
    if (v == 0) throw UsageError("dyadic levels need a positive value");
    return static_cast<std::size_t>(std::bit_width(v));
}

std::vector<DyadicClass> dyadic_classes(std::span<const std::uint64_t> values) {
    if (values.empty()) throw UsageError("dyadic classes of an empty sequence");
    std::vector<DyadicClass> by_level(64);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] == 0) throw UsageError("dyadic classes need positive values");
        by_level[std::bit_width(values[k]) - 1].indices.push_back(k);
    }
    std::vector<DyadicClass> out;
    for (std::size_t j = 0; j < by_level.size(); ++j) {
        if (by_level[j].indices.empty()) continue;
        by_level[j].low = std::uint64_t{1} << j;
        by_level[j].high = j == 63 ? 0 : std::uint64_t{1} << (j + 1);  // 0 encodes 2^64
        out.push_back(std::move(by_level[j]));
    }
    return out;
}

RegularSubset extract_regular(const PointSet& e, const Partition& p, std::size_t block) {
    if (e.empty()) throw UsageError("cannot regularize an empty point set");
    const RichnessProfile prof = richness(e, p, block);
    const auto classes = dyadic_classes(prof.values);
    // Classes are ordered by level, so strict '>' keeps the lowest on ties.
    const DyadicClass* best = &classes.front();
    for (const auto& c : classes) {
        if (c.indices.size() > best->indices.size()) best = &c;
    }
    RegularSubset out{e.subset(best->indices), best->low, best->low, best->high, best->indices, 0};
    std::vector<std::size_t> fibers;
    for (std::size_t i : best->indices) fibers.push_back(prof.fiber[i]);
    std::sort(fibers.begin(), fibers.end());
    out.fiber_count = static_cast<std::size_t>(std::unique(fibers.begin(), fibers.end()) - fibers.begin());
    return out;
}

std::uint64_t floor_rational_power(std::uint64_t n, std::int64_t num, std::int64_t den) {
    using boost::multiprecision::cpp_int;
    if (den <= 0 || num < 0) throw UsageError("rational power needs num >= 0 and den >= 1");
    if (num > den) throw UsageError("rational power exponent must be at most 1");
    if (n == 0) return num == 0 ? 1 : 0;
    // Largest t with t^den <= n^num; t lies in [1, n].
    const cpp_int target = boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(num));
    std::uint64_t lo = 1, hi = n;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (boost::multiprecision::pow(cpp_int(mid), static_cast<unsigned>(den)) <= target) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

RichPoints rich_points(const PointSet& e, const Partition& p, std::size_t block, const Rational& alpha) {
    const auto q = static_cast<std::int64_t>(p.q());
    if (alpha < Rational(1, q) || alpha > Rational(1)) {
        throw UsageError("alpha must lie in [1/q, 1], got " + alpha.str());
    }
    const RichnessProfile prof = richness(e, p, block);
    const Rational exponent = Rational(1) - Rational(q - 1) * alpha;

    RichPoints out{PointSet(p.part(block)), 1, 0, prof.fiber_count(), 0};
    if (exponent > Rational(0)) {
        out.threshold = floor_rational_power(e.size(), exponent.num(), exponent.den());
    }
    out.threshold = std::max<std::uint64_t>(out.threshold, 1);

    std::vector<std::size_t> reps(prof.fiber_count(), e.size());
    for (std::size_t k = 0; k < e.size(); ++k) reps[prof.fiber[k]] = std::min(reps[prof.fiber[k]], k);
    std::vector<Coord> flat;
    const std::size_t lo = p.offset(block);
    for (std::size_t f = 0; f < prof.fiber_count(); ++f) {
        if (prof.fiber_sizes[f] >= out.threshold) {
            auto img = e[reps[f]].subspan(lo, p.part(block));
            flat.insert(flat.end(), img.begin(), img.end());
            ++out.rich_count;
        } else {
            out.points_over_nonrich += prof.fiber_sizes[f];
        }
    }
    out.projected = PointSet(p.part(block), std::move(flat));
    return out;
}

std::vector<HistogramRow> richness_histogram(const RichnessProfile& profile) {
    std::vector<HistogramRow> rows;
    if (profile.fiber_sizes.empty()) return rows;
    for (const auto& c : dyadic_classes(profile.fiber_sizes)) {
        std::size_t points = 0;
        for (std::size_t f : c.indices) points += profile.fiber_sizes[f];
        rows.push_back({c.low, c.high, c.indices.size(), points});
    }
    return rows;
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramRow>& rows) {
    os << "class_low,class_high,fiber_count,point_count\n";
    for (const auto& r : rows) {
        os << r.class_low << ',' << r.class_high << ',' << r.fiber_count << ',' << r.point_count << '\n';
    }
}

}  // namespace mpdist
