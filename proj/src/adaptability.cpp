#include "mpdist/adaptability.hpp"

#include "mpdist/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace mpdist {

namespace {

using boost::multiprecision::cpp_bin_float_100;
using boost::multiprecision::cpp_rational;

constexpr std::size_t kRowBlock = 64;

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) carry += (sum - t) + v;
        else carry += (v - t) + sum;
        sum = t;
    }
    void add(const CompensatedSum& o) {
        add(o.sum);
        add(o.carry);
    }
    double value() const { return sum + carry; }
};

SqDist raw_sq(const Coord* a, const Coord* b, std::size_t d) {
    SqDist s = 0;
    for (std::size_t j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return s;
}

double integral_power(double ratio, unsigned s) {
    double v = s % 2 ? std::sqrt(ratio) : 1.0;
    for (unsigned k = 0; k < s / 2; ++k) v *= ratio;
    return v;
}

void require_two(const PointSet& e) {
    if (e.size() < 2) throw UsageError("need at least 2 points, got " + std::to_string(e.size()));
}

}  // namespace

SqDist diameter_sq(const PointSet& e) {
    SqDist best = 0;
    const Coord* f = e.flat().data();
    const std::size_t d = e.dim();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) best = std::max(best, raw_sq(f + i * d, f + j * d, d));
    }
    return best;
}

EnergyReport discrete_energy(const PointSet& e, double s, unsigned threads) {
    require_two(e);
    if (!(s > 0)) throw UsageError("energy exponent s must be positive");
    const std::size_t n = e.size();
    const std::size_t d = e.dim();
    const Coord* f = e.flat().data();
    const SqDist diam = diameter_sq(e);
    const double half_s = s / 2;
    // Integer s avoids pow(): ratio^{s/2} = ratio^{floor(s/2)} * sqrt(ratio)^{s mod 2}.
    const bool integral = s == std::floor(s) && s <= 64;
    const auto whole_s = static_cast<unsigned>(s);
    const auto diam_ld = static_cast<double>(diam);

    const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
    std::vector<CompensatedSum> partial(blocks);
    auto work = [&](std::size_t b) {
        CompensatedSum acc;
        const std::size_t r1 = std::min(n, (b + 1) * kRowBlock);
        for (std::size_t i = b * kRowBlock; i < r1; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double ratio = diam_ld / static_cast<double>(raw_sq(f + i * d, f + j * d, d));
                acc.add(integral ? integral_power(ratio, whole_s) : std::pow(ratio, half_s));
            }
        }
        partial[b] = acc;
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b) work(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) work(b);
            });
        }
        for (auto& t : pool) t.join();
    }
    // Fixed reduction order over blocks.
    CompensatedSum total;
    for (const auto& p : partial) total.add(p);

    EnergyReport r;
    r.s = s;
    r.n = n;
    r.diameter_sq = diam;
    r.energy = 2.0 * total.value() / (static_cast<double>(n) * static_cast<double>(n));
    r.adaptable = r.energy <= r.threshold;
    return r;
}

cpp_rational exact_energy(const PointSet& e, unsigned s) {
    require_two(e);
    if (s == 0 || s % 2 != 0) throw UsageError("exact energy needs an even positive integer s");
    const SqDist diam = diameter_sq(e);
    const std::size_t d = e.dim();
    const Coord* f = e.flat().data();
    cpp_rational sum = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            cpp_rational ratio(boost::multiprecision::cpp_int(diam), boost::multiprecision::cpp_int(raw_sq(f + i * d, f + j * d, d)));
            cpp_rational term = 1;
            for (unsigned k = 0; k < s / 2; ++k) term *= ratio;
            sum += term;
        }
    }
    const auto n = static_cast<long long>(e.size());
    return 2 * sum / cpp_rational(n * n);
}

cpp_bin_float_100 reference_energy(const PointSet& e, unsigned s) {
    require_two(e);
    if (s == 0) throw UsageError("energy exponent s must be positive");
    const SqDist diam = diameter_sq(e);
    const std::size_t d = e.dim();
    const Coord* f = e.flat().data();
    cpp_bin_float_100 sum = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            cpp_bin_float_100 ratio = cpp_bin_float_100(diam) / cpp_bin_float_100(raw_sq(f + i * d, f + j * d, d));
            cpp_bin_float_100 term = 1;
            for (unsigned k = 0; k < s / 2; ++k) term *= ratio;
            if (s % 2 == 1) term *= boost::multiprecision::sqrt(ratio);
            sum += term;
        }
    }
    const auto n = static_cast<double>(e.size());
    return 2 * sum / cpp_bin_float_100(n * n);
}

Rational min_separation(const PointSet& e) {
    require_two(e);
    const std::size_t d = e.dim();
    const Coord* f = e.flat().data();
    SqDist lo = std::numeric_limits<SqDist>::max();
    SqDist hi = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const SqDist v = raw_sq(f + i * d, f + j * d, d);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return Rational(lo, hi);
}

ThinResult separate_thin(const PointSet& e, double s) {
    require_two(e);
    if (!(s > 0)) throw UsageError("thinning exponent s must be positive");
    const std::size_t n = e.size();
    const std::size_t d = e.dim();
    const Coord* f = e.flat().data();
    // Normalized distance >= n^{-1/s}  <=>  sq * n^{2/s} >= diam_sq.
    const long double scale = std::pow(static_cast<long double>(n), 2.0L / static_cast<long double>(s));
    const auto diam = static_cast<long double>(diameter_sq(e));

    ThinResult out{PointSet(d), {}, 0};
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (std::size_t k : out.kept_indices) {
            if (static_cast<long double>(raw_sq(f + i * d, f + k * d, d)) * scale < diam) {
                ok = false;
                break;
            }
        }
        if (ok) out.kept_indices.push_back(i);
    }
    out.removed = n - out.kept_indices.size();
    out.kept = e.subset(out.kept_indices);
    return out;
}

AdaptabilityResult is_adaptable(const PointSet& e, double s, double threshold, bool auto_thin,
                                unsigned threads) {
    AdaptabilityResult out;
    if (auto_thin) {
        ThinResult t = separate_thin(e, s);
        out.kept = t.kept.size();
        out.removed = t.removed;
        if (t.kept.size() < 2) throw UsageError("thinning left fewer than 2 points");
        out.report = discrete_energy(t.kept, s, threads);
    } else {
        out.kept = e.size();
        out.report = discrete_energy(e, s, threads);
    }
    out.report.threshold = threshold;
    out.report.adaptable = out.report.energy <= threshold;
    out.adaptable = out.report.adaptable;
    return out;
}

}  // namespace mpdist
