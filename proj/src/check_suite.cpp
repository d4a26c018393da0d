#include "mpdist/check_suite.hpp"

#include "mpdist/adaptability.hpp"
#include "mpdist/error.hpp"
#include "mpdist/exponents.hpp"
#include "mpdist/generators.hpp"
#include "mpdist/harness.hpp"
#include "mpdist/json_io.hpp"
#include "mpdist/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace mpdist {

std::optional<std::string> check_nu_sum(const DistanceTupleStats& s, std::uint64_t expected_sum) {
    const std::uint64_t got = s.sum_nu();
    if (got != expected_sum) {
        return "sum of nu is " + std::to_string(got) + ", expected " + std::to_string(expected_sum);
    }
    for (std::size_t k = 0; k < s.count(); ++k) {
        if (s.nu[k] == 0) return "tuple " + s.tuple(k).str() + " has zero multiplicity";
    }
    return std::nullopt;
}

std::optional<std::string> check_cauchy_schwarz(const QuadrupleCount& qc) {
    const unsigned __int128 pairs = qc.total_pairs;
    unsigned __int128 sum = 0;
    for (const auto& c : qc.class_sizes) sum += c.second;
    if (sum != pairs) return std::string("class sizes do not sum to |E||F|");
    unsigned __int128 sq = 0;
    for (const auto& c : qc.class_sizes) sq += static_cast<unsigned __int128>(c.second) * c.second;
    if (sq != qc.q_value) return std::string("q_value differs from the sum of squared class sizes");
    if (static_cast<unsigned __int128>(qc.distinct()) * qc.q_value < pairs * pairs) {
        return "distinct * Q < (|E||F|)^2 with distinct=" + std::to_string(qc.distinct());
    }
    return std::nullopt;
}

std::optional<std::string> check_quadruple_brute_force(const PointSet& e, const PointSet& f,
                                                       const QuadrupleCount& qc) {
    unsigned __int128 brute = 0;
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b = 0; b < f.size(); ++b)
            for (std::size_t c = 0; c < e.size(); ++c)
                for (std::size_t d = 0; d < f.size(); ++d)
                    if (sq_dist(e[a], f[b]) == sq_dist(e[c], f[d])) ++brute;
    if (brute != qc.q_value) {
        return "four-loop count " + std::to_string(static_cast<std::uint64_t>(brute)) + " vs q_value " +
               std::to_string(static_cast<std::uint64_t>(qc.q_value));
    }
    return std::nullopt;
}

bool CheckReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed || r.report_only; });
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results) {
        rows.push_back({{"module", r.module},
                        {"name", r.name},
                        {"status", r.report_only ? "report" : (r.passed ? "pass" : "fail")},
                        {"detail", r.detail}});
    }
    return {{"seed", seed}, {"sizes", sizes}, {"all_passed", all_passed()}, {"results", rows}};
}

namespace {

struct Instance {
    PointSet e;
    Partition p;
};

// Small coordinate ranges so distances repeat and fibers collide.
Instance random_instance(SplitMix64& rng, std::size_t n) {
    static const std::vector<std::size_t> dims{4, 5, 6};
    const std::size_t d = dims[rng.below(dims.size())];
    const auto parts = increasing_partitions(d);
    const Partition& p = parts[rng.below(parts.size())];
    std::int64_t m = 3 + static_cast<std::int64_t>(rng.below(4));
    return {random_cube(d, n, m, rng.next()), p};
}

class Suite {
public:
    explicit Suite(const CheckOptions& o) : opts_(o), rng_(o.seed) {
        report_.seed = o.seed;
        report_.sizes = o.sizes;
    }

    // Runs `body` over the corpus; body returns an error message on failure.
    void each(const std::string& module, const std::string& name,
              const std::function<std::optional<std::string>(const Instance&, SplitMix64&)>& body) {
        CheckResult r{module, name, true, false, {}};
        std::size_t runs = 0;
        SplitMix64 local(rng_.next());
        for (std::size_t n : opts_.sizes) {
            for (std::size_t k = 0; k < opts_.instances; ++k) {
                Instance inst = random_instance(local, n);
                auto err = body(inst, local);
                ++runs;
                if (err && r.passed) {
                    r.passed = false;
                    r.detail = "n=" + std::to_string(n) + " p=" + inst.p.str() + ": " + *err;
                }
            }
        }
        if (r.passed) r.detail = std::to_string(runs) + " instances";
        report_.results.push_back(std::move(r));
    }

    void once(const std::string& module, const std::string& name, const std::function<std::optional<std::string>()>& body,
              bool report_only = false) {
        CheckResult r{module, name, true, report_only, {}};
        auto err = body();
        if (err) {
            r.passed = false;
            r.detail = *err;
        } else {
            r.detail = "ok";
        }
        report_.results.push_back(std::move(r));
    }

    void report(const std::string& module, const std::string& name, const std::string& detail) {
        report_.results.push_back({module, name, true, true, detail});
    }

    const CheckOptions& opts() const { return opts_; }
    CheckReport take() { return std::move(report_); }

private:
    CheckOptions opts_;
    SplitMix64 rng_;
    CheckReport report_;
};

Point random_vector(SplitMix64& rng, std::size_t d, std::int64_t range) {
    Point v(d);
    for (auto& c : v) c = static_cast<Coord>(rng.below(static_cast<std::uint64_t>(2 * range + 1))) - range;
    return v;
}

PointSet translate(const PointSet& e, const Point& v) {
    std::vector<Coord> flat(e.flat().begin(), e.flat().end());
    for (std::size_t k = 0; k < flat.size(); ++k) flat[k] += v[k % e.dim()];
    return PointSet(e.dim(), std::move(flat));
}

void geometry_checks(Suite& s) {
    s.each("geometry", "translation_invariance", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        const Point v = random_vector(rng, in.e.dim(), 50);
        const PointSet t = translate(in.e, v);
        for (std::size_t i = 0; i < in.e.size(); ++i)
            for (std::size_t j = 0; j < in.e.size(); ++j)
                if (dist_tuple(in.e[i], in.e[j], in.p) != dist_tuple(t[i], t[j], in.p)) return "tuple changed";
        return std::nullopt;
    });
    s.each("geometry", "symmetry_and_zero", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        for (std::size_t i = 0; i < in.e.size(); ++i)
            for (std::size_t j = 0; j < in.e.size(); ++j) {
                auto a = dist_tuple(in.e[i], in.e[j], in.p);
                if (a != dist_tuple(in.e[j], in.e[i], in.p)) return "asymmetric tuple";
                if (a.is_zero() != (i == j)) return "zero tuple iff equal points violated";
            }
        return std::nullopt;
    });
    s.each("geometry", "block_permutation_invariance", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        const std::size_t b = rng.below(in.p.q());
        std::vector<std::size_t> perm(in.e.dim());
        for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
        const std::size_t lo = in.p.offset(b);
        std::reverse(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                     perm.begin() + static_cast<std::ptrdiff_t>(in.p.offset(b + 1)));
        std::vector<Coord> flat;
        for (std::size_t i = 0; i < in.e.size(); ++i)
            for (std::size_t j : perm) flat.push_back(in.e[i][j]);
        const PointSet t(in.e.dim(), std::move(flat));
        for (std::size_t i = 0; i < in.e.size(); ++i)
            for (std::size_t j = 0; j < in.e.size(); ++j)
                if (dist_tuple(in.e[i], in.e[j], in.p) != dist_tuple(t[i], t[j], in.p)) return "tuple changed";
        return std::nullopt;
    });
    s.each("geometry", "point_file_roundtrip", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        const std::string text = to_text(in.e);
        const PointSet back = parse_point_set(text);
        if (!(back == in.e)) return "parsed set differs";
        if (to_text(back) != text) return "re-serialized text differs";
        return std::nullopt;
    });
}

void bset_checks(Suite& s) {
    const unsigned threads = s.opts().threads;
    s.each("bset", "nu_sum_identity", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        const std::uint64_t n = in.e.size();
        BSetOptions on, off;
        off.include_diagonal = false;
        if (auto err = check_nu_sum(b_set(in.e, in.p, on), n * n)) return "diag on: " + *err;
        if (auto err = check_nu_sum(b_set(in.e, in.p, off), n * n - n)) return "diag off: " + *err;
        // Two sets that share some points.
        const PointSet f = random_cube(in.e.dim(), in.e.size(), 3, rng.next());
        std::uint64_t common = 0;
        for (std::size_t i = 0; i < f.size(); ++i) common += in.e.contains(f[i]);
        if (auto err = check_nu_sum(b_set(in.e, f, in.p, on), n * f.size())) return "two-set on: " + *err;
        if (auto err = check_nu_sum(b_set(in.e, f, in.p, off), n * f.size() - common)) return "two-set off: " + *err;
        return std::nullopt;
    });
    s.each("bset", "cauchy_schwarz", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        const PointSet f = random_cube(in.e.dim(), 1 + rng.below(in.e.size()), 4, rng.next());
        if (auto err = check_cauchy_schwarz(quadruple_count(in.e, f))) return err;
        const Rational lb = cs_lower_bound(in.e, f);
        if (lb > Rational(static_cast<std::int64_t>(quadruple_count(in.e, f).distinct())))
            return "cs_lower_bound exceeds the distinct count";
        return std::nullopt;
    });
    s.each("bset", "quadruple_brute_force", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < std::min<std::size_t>(12, in.e.size()); ++i) idx.push_back(i);
        const PointSet e = in.e.subset(idx);
        const PointSet f = random_cube(in.e.dim(), 1 + rng.below(12), 3, rng.next());
        return check_quadruple_brute_force(e, f, quadruple_count(e, f));
    });
    s.each("bset", "product_identity", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        std::vector<PointSet> blocks;
        std::size_t total = 1;
        for (std::size_t i = 0; i < in.p.q(); ++i) {
            const std::size_t cap = std::max<std::size_t>(1, 4096 / total);
            const std::size_t k = 1 + rng.below(std::min<std::size_t>({cap, 6, 9}));
            blocks.push_back(random_cube(in.p.part(i), k, 3, rng.next()));
            total *= k;
        }
        const PointSet e = product_set(blocks);
        for (bool diag : {true, false}) {
            BSetOptions o;
            o.include_diagonal = diag;
            if (!(b_set_product(blocks, o) == b_set(e, in.p, o))) return std::string("product path differs, diag=") + (diag ? "on" : "off");
        }
        return std::nullopt;
    });
    s.each("bset", "monotonicity", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < in.e.size(); ++i)
            if (rng.below(2)) idx.push_back(i);
        if (idx.empty()) idx.push_back(0);
        const auto small = b_set(in.e.subset(idx), in.p);
        const auto big = b_set(in.e, in.p);
        for (const auto& t : small.tuples())
            if (!big.contains(t)) return "tuple " + t.str() + " missing from superset";
        return std::nullopt;
    });
    s.each("bset", "projection_bound", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        const auto pb = projection_bounds(in.e, in.p);
        const auto b = b_set(in.e, in.p);
        if (b.count() < pb.lower_bound) return "|B| below max projected distance count";
        return std::nullopt;
    });
    s.each("bset", "thread_determinism", [threads](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        BSetOptions one, many;
        many.threads = threads;
        if (!(b_set(in.e, in.p, one) == b_set(in.e, in.p, many))) return "stats differ between worker counts";
        return std::nullopt;
    });
}

void regularize_checks(Suite& s) {
    s.each("regularize", "fiber_identity", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        for (std::size_t b = 0; b < in.p.q(); ++b) {
            const auto prof = richness(in.e, in.p, b);
            // Fiber size equals the number of distinct complementary images within it.
            std::map<std::size_t, std::vector<Point>> comp;
            for (std::size_t i = 0; i < in.e.size(); ++i) {
                Point c;
                for (std::size_t j = 0; j < in.e.dim(); ++j)
                    if (j < in.p.offset(b) || j >= in.p.offset(b + 1)) c.push_back(in.e[i][j]);
                comp[prof.fiber[i]].push_back(c);
            }
            for (auto& [f, imgs] : comp) {
                std::sort(imgs.begin(), imgs.end());
                const auto distinct = static_cast<std::size_t>(std::unique(imgs.begin(), imgs.end()) - imgs.begin());
                if (distinct != prof.fiber_sizes[f]) return "fiber size differs from complementary image count";
            }
        }
        return std::nullopt;
    });
    s.each("regularize", "pigeonhole_and_closure", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        for (std::size_t b = 0; b < in.p.q(); ++b) {
            const auto prof = richness(in.e, in.p, b);
            const auto reg = extract_regular(in.e, in.p, b);
            if (reg.points.size() * dyadic_levels(in.e.size()) < in.e.size()) return "pigeonhole guarantee violated";
            std::map<std::size_t, std::size_t> touched;
            for (std::size_t i : reg.indices) {
                if (prof.values[i] < reg.class_low || prof.values[i] >= 2 * reg.class_low) return "richness outside class";
                ++touched[prof.fiber[i]];
            }
            for (auto [f, c] : touched)
                if (c != prof.fiber_sizes[f]) return "fiber split by extraction";
            // Richness inside E' is unchanged since whole fibers are kept.
            const auto inner = richness(reg.points, in.p, b);
            for (std::size_t k = 0; k < reg.indices.size(); ++k)
                if (inner.values[k] != prof.values[reg.indices[k]]) return "richness changed after extraction";
            const std::size_t proj = project_set(reg.points, in.p, b).size();
            if (proj * reg.class_low > reg.points.size() || reg.points.size() > proj * 2 * reg.class_low)
                return "reconstruction bounds violated";
        }
        return std::nullopt;
    });
    s.each("regularize", "rich_point_count", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        const auto q = static_cast<std::int64_t>(in.p.q());
        const Rational alpha = Rational(1, q) + Rational(static_cast<std::int64_t>(rng.below(5)), 4) * (Rational(1) - Rational(1, q));
        for (std::size_t b = 0; b < in.p.q(); ++b) {
            const auto rp = rich_points(in.e, in.p, b, alpha);
            if (rp.points_over_nonrich > rp.projected_total * rp.threshold) return "non-rich mass exceeds |pi(E)| * threshold";
        }
        return std::nullopt;
    });
}

void adaptability_checks(Suite& s) {
    s.each("adaptability", "energy_monotone_in_s", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        const double e1 = discrete_energy(in.e, 1).energy;
        const double e2 = discrete_energy(in.e, 2).energy;
        const double e3 = discrete_energy(in.e, 3).energy;
        if (!(e1 <= e2 && e2 <= e3)) return "energy not monotone in s";
        return std::nullopt;
    });
    s.each("adaptability", "scale_invariance", [](const Instance& in, SplitMix64& rng) -> std::optional<std::string> {
        const auto k = static_cast<Coord>(2 + rng.below(7));
        std::vector<Coord> flat(in.e.flat().begin(), in.e.flat().end());
        for (auto& c : flat) c *= k;
        const PointSet scaled(in.e.dim(), std::move(flat));
        const double a = discrete_energy(in.e, 2.5).energy;
        const double b = discrete_energy(scaled, 2.5).energy;
        if (std::abs(a - b) > 1e-12 * std::abs(a)) return "energy changed under scaling";
        return std::nullopt;
    });
    s.each("adaptability", "thinning_separation", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        for (double sv : {1.0, 2.0, 3.0}) {
            const auto t = separate_thin(in.e, sv);
            const double bound = std::pow(static_cast<double>(in.e.size()), -1.0 / sv);
            const double diam = std::sqrt(static_cast<double>(diameter_sq(in.e)));
            for (std::size_t i = 0; i < t.kept.size(); ++i)
                for (std::size_t j = i + 1; j < t.kept.size(); ++j)
                    if (std::sqrt(static_cast<double>(sq_dist(t.kept[i], t.kept[j]))) / diam < bound * (1 - 1e-12))
                        return "kept pair closer than n^{-1/s}";
        }
        return std::nullopt;
    });
    s.each("adaptability", "exact_vs_float", [](const Instance& in, SplitMix64&) -> std::optional<std::string> {
        if (in.e.size() > 64) return std::nullopt;
        for (unsigned sv : {1u, 2u, 3u, 4u}) {
            const double f = discrete_energy(in.e, sv).energy;
            const double ref = static_cast<double>(reference_energy(in.e, sv));
            if (std::abs(f - ref) > 1e-9 * ref) return "float energy off at s=" + std::to_string(sv);
        }
        const double ex = static_cast<double>(exact_energy(in.e, 2));
        if (std::abs(discrete_energy(in.e, 2).energy - ex) > 1e-9 * ex) return "float vs rational energy at s=2";
        return std::nullopt;
    });
}

void generator_checks(Suite& s) {
    s.once("generators", "sphere_pair_single_tuple", []() -> std::optional<std::string> {
        for (auto [parts, r] : std::vector<std::pair<std::vector<std::size_t>, std::int64_t>>{
                 {{2, 2}, 1}, {{2, 2}, 25}, {{2, 2}, 625}, {{2, 3}, 25}, {{3, 3}, 9}, {{2, 4}, 5}}) {
            const Partition p(parts);
            auto [e, f] = sphere_pair(p, r);
            const auto b = b_set(e, f, p);
            if (b.count() != 1 || b.tuple(0) != DistanceTuple{{r, r}}) return "p=" + p.str() + " R=" + std::to_string(r);
        }
        return std::nullopt;
    });
    s.once("generators", "grid_product_law", []() -> std::optional<std::string> {
        for (auto parts : std::vector<std::vector<std::size_t>>{{2, 2}, {2, 3}, {2, 2, 2}}) {
            const Partition p(parts);
            for (std::int64_t m : {2, 3}) {
                GeneratorSpec spec{GeneratorKind::Grid, {{"d", static_cast<std::int64_t>(p.dim())}, {"m", m}}, 0};
                const auto inst = generate(spec, p);
                if (!(b_set_product(*inst.product_blocks) == b_set(inst.e, p))) return "grid m=" + std::to_string(m) + " p=" + p.str();
            }
        }
        return std::nullopt;
    });
    s.once("generators", "lattice_sphere_bruteforce", []() -> std::optional<std::string> {
        // Sample of radii; the unit tests sweep the full range.
        for (std::size_t k = 2; k <= 4; ++k) {
            const std::int64_t rmax = k == 4 ? 100 : 400;
            const auto lim = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rmax)));
            std::map<std::int64_t, std::vector<Coord>> buckets;
            const PointSet box = grid(k, 2 * lim + 1);
            for (std::size_t i = 0; i < box.size(); ++i) {
                Point v(box[i].begin(), box[i].end());
                std::int64_t norm = 0;
                for (auto& c : v) {
                    c -= lim;
                    norm += c * c;
                }
                if (norm <= rmax) buckets[norm].insert(buckets[norm].end(), v.begin(), v.end());
            }
            for (std::int64_t r = 1; r <= rmax; ++r) {
                const PointSet want(k, buckets[r]);
                if (!(lattice_sphere(k, r) == want)) return "k=" + std::to_string(k) + " R=" + std::to_string(r);
            }
        }
        return std::nullopt;
    });
    s.once("generators", "determinism", []() -> std::optional<std::string> {
        if (random_cube(4, 100, 1000, 1).fingerprint() != random_cube(4, 100, 1000, 1).fingerprint()) return "random_cube";
        if (jittered_grid(4, 4, 1, 7).fingerprint() != jittered_grid(4, 4, 1, 7).fingerprint()) return "jittered_grid";
        return std::nullopt;
    });
}

void exponent_checks(Suite& s) {
    s.once("exponents", "tau_beats_trivial", []() -> std::optional<std::string> {
        for (std::size_t d = 4; d <= 30; ++d)
            for (const auto& p : increasing_partitions(d)) {
                if (p.q() < 2) continue;
                const auto t = tau(p);
                if (!(t.tau > trivial_exponent_sv(p))) return "tau <= trivial at " + p.str();
                for (const auto& a : t.alpha_per_block)
                    if (a < Rational(1, static_cast<std::int64_t>(p.q())) || a > Rational(1)) return "alpha out of range at " + p.str();
                if (!t.first_block_maximizes) return "block 1 not maximal at " + p.str();
            }
        return std::nullopt;
    });
    s.once("exponents", "theta_range_monotone", []() -> std::optional<std::string> {
        for (std::size_t q = 2; q <= 30; ++q) {
            Rational prev(0);
            for (std::int64_t k = 1; k <= 20; ++k) {
                const Rational th = theta(q, Rational(k, 20)).theta;
                if (!(th > Rational(1, static_cast<std::int64_t>(q)) && th <= Rational(1))) return "theta out of range";
                if (!(th > prev)) return "theta not increasing in eta";
                prev = th;
            }
        }
        return std::nullopt;
    });
    s.once("exponents", "zeta_bounds", []() -> std::optional<std::string> {
        Rational prev(0);
        for (std::size_t k = 3; k <= 1000; ++k) {
            const Rational z = zeta(k);
            if (z < Rational(13, 14) || !(z > prev)) return "zeta fails at k=" + std::to_string(k);
            prev = z;
        }
        return std::nullopt;
    });
    s.once("exponents", "table_roundtrip", []() -> std::optional<std::string> {
        for (std::size_t d = 2; d <= 12; ++d)
            for (const auto& p : increasing_partitions(d)) {
                const auto t = exponent_report(p);
                const auto j = to_json(t);
                if (to_json(exponent_table_from_json(j)) != j) return "round trip differs at " + p.str();
            }
        return std::nullopt;
    });
}

void harness_checks(Suite& s) {
    s.once("harness", "fit_exact_power_law", []() -> std::optional<std::string> {
        const auto f = fit_exponent({10, 100, 1000, 10000}, {3, 300, 30000, 3000000});
        if (std::abs(f.slope - 2.0) > 1e-12 || std::abs(f.r_squared - 1.0) > 1e-12) return "slope " + std::to_string(f.slope);
        return std::nullopt;
    });
    s.once("harness", "fast_path_equivalence", []() -> std::optional<std::string> {
        const Partition p({2, 3});
        GeneratorSpec spec{GeneratorKind::SubspaceEmbed, {{"m", 2}}, 0};
        const auto run = run_scaling(spec, p, {"m", {2, 3, 4}});
        if (!run.fast_path || !run.cross_validated) return std::string("fast path not cross-validated");
        for (const auto& m : run.measurements) {
            GeneratorSpec g = spec;
            g.params["m"] = m.param;
            BSetOptions o;
            o.include_diagonal = false;
            if (b_set(generate(g, p).e, p, o).count() != m.b_count) return "mismatch at m=" + std::to_string(m.param);
        }
        return std::nullopt;
    });
    // nu_max against the single-distance scale; constant unspecified, so report only.
    std::ostringstream detail;
    bool ok = true;
    SplitMix64 rng(s.opts().seed ^ 0x5eedULL);
    const Partition p22({2, 2});
    for (std::size_t n : s.opts().sizes) {
        const PointSet e = random_cube(4, n, 5, rng.next());
        const auto b = b_set(e, p22);
        const double lhs = static_cast<double>(b.max_nu());
        const double rhs = 10.0 * std::pow(static_cast<double>(project_set(e, p22, 0).size() * project_set(e, p22, 1).size()), 4.0 / 3.0);
        ok = ok && lhs <= rhs;
        detail << "n=" << n << " max_nu=" << b.max_nu() << (lhs <= rhs ? " <= " : " > ") << "10(|pi1||pi2|)^{4/3}; ";
    }
    s.report("harness", "nu_max_single_distance", (ok ? "within bound: " : "exceeds bound: ") + detail.str());
}

}  // namespace

CheckReport check_suite(const CheckOptions& opts) {
    if (opts.sizes.empty()) throw UsageError("check suite needs at least one size");
    Suite s(opts);
    geometry_checks(s);
    bset_checks(s);
    regularize_checks(s);
    adaptability_checks(s);
    generator_checks(s);
    exponent_checks(s);
    harness_checks(s);
    return s.take();
}

}  // namespace mpdist
