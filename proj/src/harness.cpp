#include "mpdist/harness.hpp"

#include "mpdist/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

namespace mpdist {

FitResult fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw UsageError("fit needs equally many x and y values");
    if (x.size() < 3) throw UsageError("fit needs at least 3 measurements, got " + std::to_string(x.size()));
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw UsageError("fit needs positive values");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw UsageError("fit needs at least two distinct x values");
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (f.intercept + f.slope * lx[i]);
        ss_res += r * r;
    }
    f.r_squared = syy == 0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return f;
}

ScalingRun run_scaling(const GeneratorSpec& spec, const Partition& p, const Ladder& ladder,
                       const ScanOptions& opts) {
    if (ladder.param.empty()) throw UsageError("ladder needs a parameter name");
    ScalingRun run{spec, ladder, p, opts.include_diagonal, false, false, false, {}, {}, {}};
    BSetOptions bopts;
    bopts.include_diagonal = opts.include_diagonal;
    bopts.threads = opts.threads;
    bopts.pair_budget = opts.pair_budget;

    std::vector<std::int64_t> values = ladder.values;
    for (std::int64_t v : values) {
        GeneratorSpec s = spec;
        s.params[ladder.param] = v;
        GeneratedInstance inst = generate(s, p);
        const PointSet& e = inst.e;
        const PointSet& f = inst.f ? *inst.f : inst.e;
        if (e.dim() != p.dim()) {
            throw UsageError("generated dimension " + std::to_string(e.dim()) + " does not match partition " +
                             p.str());
        }
        run.two_set = run.two_set || inst.f.has_value();
        const unsigned __int128 pairs = static_cast<unsigned __int128>(e.size()) * f.size();
        const bool fast = opts.use_fast_path && inst.product_blocks && !inst.f;

        const auto t0 = std::chrono::steady_clock::now();
        std::optional<DistanceTupleStats> stats;
        if (fast) {
            stats = b_set_product(*inst.product_blocks, bopts);
            run.fast_path = true;
            if (run.measurements.empty()) {
                if (pairs <= opts.pair_budget) {
                    if (!(b_set(e, p, bopts) == *stats)) {
                        throw InvariantFailure("product fast path disagrees with brute force at " + ladder.param +
                                               "=" + std::to_string(v));
                    }
                    run.cross_validated = true;
                } else {
                    run.warnings.push_back("smallest ladder size exceeds the pair budget; fast path not cross-validated");
                }
            }
        } else {
            if (pairs > opts.pair_budget) {
                run.warnings.push_back("truncating ladder at " + ladder.param + "=" + std::to_string(v) + ": " +
                                       std::to_string(static_cast<std::uint64_t>(pairs)) +
                                       " pairs exceed budget " + std::to_string(opts.pair_budget));
                break;
            }
            stats = b_set(e, f, p, bopts);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!run.measurements.empty() && e.size() <= run.measurements.back().n) {
            throw UsageError("ladder must produce strictly increasing point counts");
        }
        run.measurements.push_back({v, e.size(), stats->count(), secs});
    }
    if (run.measurements.size() < 3) {
        throw UsageError("only " + std::to_string(run.measurements.size()) +
                         " ladder sizes fit the budget; a fit needs at least 3");
    }
    std::vector<double> xs, ys;
    for (const auto& m : run.measurements) {
        xs.push_back(static_cast<double>(m.n));
        ys.push_back(static_cast<double>(m.b_count));
    }
    run.fit = fit_exponent(xs, ys);
    return run;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ConsistentLowerBound: return "consistent-lower-bound";
        case Verdict::ViolatedLowerBound: return "violated-lower-bound";
        case Verdict::MatchesGridUpper: return "matches-grid-upper";
        case Verdict::DiffersFromGridUpper: return "differs-from-grid-upper";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

ComparisonReport compare(const ScalingRun& run, const ExponentTable& table, const CompareOptions& opts) {
    ComparisonReport rep;
    rep.measured_slope = run.fit.slope;
    rep.predicted = table;
    for (const auto& entry : table.entries) {
        if (entry.kind == EntryKind::Parameter) continue;
        VerdictRow row{entry.key, entry.value, Verdict::NotApplicable, 0, {}};
        if (run.two_set) {
            row.detail = "two-set configuration; single-set bounds do not apply";
        } else if (entry.kind == EntryKind::GridUpper) {
            const double gap = run.fit.slope - entry.value.to_double();
            row.verdict = std::abs(gap) <= opts.grid_tolerance ? Verdict::MatchesGridUpper
                                                               : Verdict::DiffersFromGridUpper;
            row.detail = "slope minus grid rate = " + std::to_string(gap);
        } else {
            const double e = entry.value.to_double();
            for (const auto& m : run.measurements) {
                const double n = static_cast<double>(m.n);
                const double slack = std::pow(std::max(1.0, std::log2(n)), opts.log_slack_power);
                if (static_cast<double>(m.b_count) < std::pow(n, e) / slack) ++row.sizes_below;
            }
            row.verdict = row.sizes_below >= 2 ? Verdict::ViolatedLowerBound : Verdict::ConsistentLowerBound;
            row.detail = std::to_string(row.sizes_below) + " of " + std::to_string(run.measurements.size()) +
                         " sizes below n^e/log2(n)^" + std::to_string(opts.log_slack_power);
        }
        rep.verdicts.push_back(std::move(row));
    }
    return rep;
}

}  // namespace mpdist
