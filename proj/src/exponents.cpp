#include "mpdist/exponents.hpp"

#include "mpdist/error.hpp"

#include <functional>

namespace mpdist {

namespace {

std::int64_t as_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

void need_dim(std::size_t m, const char* what) {
    if (m < 2) throw UsageError(std::string(what) + " needs dimension >= 2, got " + std::to_string(m));
}

}  // namespace

Rational gamma_sv(std::size_t m) {
    need_dim(m, "gamma_sv");
    const auto mm = as_i64(m);
    return Rational(2, mm) - Rational(2, mm * (mm + 2));
}

NotedRational gamma_best(std::size_t m) {
    need_dim(m, "gamma_best");
    if (m == 2) return {Rational(1), "planar distinct distances, up to logarithms"};
    if (m == 3) return {Rational(3, 5), "three-dimensional bound via the iterative planar argument"};
    return {gamma_sv(m), "Solymosi-Vu exponent 2/m - 2/(m(m+2))"};
}

Rational delta_pair(std::size_t m) {
    need_dim(m, "delta_pair");
    return Rational(2, as_i64(m) + 1);
}

Rational eta_general(std::size_t d, std::size_t block_size) {
    if (block_size < 2) throw UsageError("block size must be >= 2");
    if (block_size > d) {
        throw UsageError("block size " + std::to_string(block_size) + " exceeds dimension " +
                         std::to_string(d));
    }
    return Rational(2, 2 * as_i64(d) - (as_i64(block_size) - 1));
}

ThetaResult theta(std::size_t q, const Rational& eta) {
    if (q < 2) throw UsageError("theta needs q >= 2");
    if (eta <= Rational(0) || eta > Rational(1)) {
        throw UsageError("theta needs eta in (0, 1], got " + eta.str());
    }
    const auto qq = as_i64(q);
    const Rational t = (Rational(1) + eta) / (Rational(qq) + Rational(qq - 1) * eta);
    return {t, t};
}

TwosTheta theta_partition_of_twos(std::size_t q) {
    if (q < 2) throw UsageError("partition of twos needs q >= 2");
    const auto qq = as_i64(q);
    TwosTheta out;
    out.q = q;
    out.eta = Rational(2, 4 * (qq - 1));
    out.closed_form = theta(q, out.eta);
    out.displayed = Rational(1, qq) + Rational(2, qq * (4 * qq + 1) * (qq - 1));
    out.discrepancy = out.closed_form.theta != out.displayed;
    return out;
}

TauReport tau(const Partition& p) {
    if (p.q() < 2) throw UsageError("tau needs q >= 2, got partition " + p.str());
    const auto q1 = as_i64(p.q() - 1);
    const Rational gq = gamma_sv(p.part(p.q() - 1));
    TauReport r;
    for (std::size_t i = 0; i < p.q(); ++i) {
        const Rational x = gamma_sv(p.part(i)) + eta_general(p.dim(), p.part(i));
        const Rational alpha = x / (gq + Rational(q1) * x);
        r.alpha_per_block.push_back(alpha);
        r.per_block.push_back(gq * alpha);
    }
    r.tau = r.per_block.front();
    r.alpha = r.alpha_per_block.front();
    r.max = r.per_block.front();
    for (std::size_t i = 1; i < r.per_block.size(); ++i) {
        if (r.per_block[i] > r.max) {
            r.max = r.per_block[i];
            r.argmax = i;
        }
    }
    r.first_block_maximizes = r.tau == r.max;
    return r;
}

Rational zeta(std::size_t k) {
    if (k < 3) throw UsageError("zeta needs k >= 3, got " + std::to_string(k));
    const auto kk = as_i64(k);
    return Rational(kk * kk + 2 * kk, kk * kk + 2 * kk + 1);
}

Rational trivial_exponent(const Partition& p) {
    return gamma_best(p.part(p.q() - 1)).value / Rational(as_i64(p.q()));
}

Rational trivial_exponent_sv(const Partition& p) {
    return gamma_sv(p.part(p.q() - 1)) / Rational(as_i64(p.q()));
}

Rational grid_exponent(const Partition& p) { return Rational(2 * as_i64(p.q()), as_i64(p.dim())); }

std::string to_string(EntryKind k) {
    switch (k) {
        case EntryKind::LowerBound: return "lower-bound";
        case EntryKind::ConditionalLowerBound: return "conditional-lower-bound";
        case EntryKind::GridUpper: return "grid-upper";
        case EntryKind::Parameter: return "parameter";
    }
    return "unknown";
}

EntryKind parse_entry_kind(const std::string& s) {
    for (auto k : {EntryKind::LowerBound, EntryKind::ConditionalLowerBound, EntryKind::GridUpper,
                   EntryKind::Parameter}) {
        if (to_string(k) == s) return k;
    }
    throw UsageError("unknown exponent entry kind '" + s + "'");
}

const ExponentEntry* ExponentTable::find(const std::string& key) const {
    for (const auto& e : entries) {
        if (e.key == key) return &e;
    }
    return nullptr;
}

ExponentTable exponent_report(const Partition& p) {
    ExponentTable t;
    t.partition = p;
    const std::size_t q = p.q();
    const std::size_t d = p.dim();
    for (std::size_t i = 0; i < q; ++i) {
        t.gamma_sv.push_back(gamma_sv(p.part(i)));
        t.gamma_best.push_back(gamma_best(p.part(i)).value);
        t.eta.push_back(eta_general(d, p.part(i)));
        t.delta.push_back(delta_pair(p.part(i)));
    }
    t.trivial = trivial_exponent(p);
    t.trivial_sv = trivial_exponent_sv(p);
    t.grid_upper = grid_exponent(p);

    auto add = [&t](std::string key, Rational v, EntryKind kind, std::string note) {
        t.entries.push_back({std::move(key), v, kind, std::move(note)});
    };
    add("trivial", t.trivial, EntryKind::LowerBound,
        "densest projection, gamma_best(p_q)/q; " + gamma_best(p.part(q - 1)).note);
    add("trivial_sv", t.trivial_sv, EntryKind::Parameter, "gamma_sv(p_q)/q");

    if (q == 2) {
        const std::size_t k = p.part(0);
        const std::size_t l = p.part(1);
        if (k == 2 && l == 2) {
            add("b22_unconditional", Rational(6, 11), EntryKind::LowerBound,
                "from nu <= (|pi_1||pi_2|)^{4/3} and the projection bound");
            add("b22_conditional", Rational(2, 3), EntryKind::ConditionalLowerBound,
                "assumes the single distance conjecture");
            add("b22_sharp", Rational(1), EntryKind::LowerBound,
                "dyadic pigeonholing; sharp up to logarithms");
        } else if (k == 2 && l == 3) {
            add("b23_first_improvement", Rational(36, 103), EntryKind::LowerBound,
                "unit-distance estimates combined with the projection bound");
            add("b23_gamma3", gamma_best(3).value, EntryKind::LowerBound,
                "|B_{2,3}| >~ |E|^{gamma_3} with gamma_3 >= 3/5");
        }
        if (k != l) {
            add("bkl_near_optimal", min(gamma_best(l).value, delta_pair(k)),
                EntryKind::ConditionalLowerBound,
                "min(gamma_l, delta_k) under the two-set condition on both blocks");
            add("bkl_adaptable", gamma_best(l).value, EntryKind::ConditionalLowerBound,
                "gamma_l for s-adaptable E with s > l/2 + 1/3");
        } else if (k >= 3) {
            t.zeta = zeta(k);
            add("bkk_13_14", Rational(13, 14) * gamma_sv(k), EntryKind::ConditionalLowerBound,
                "(13/14) gamma_sv(k); uses zeta(k) >= 13/14 for k >= 3");
            add("bkk_zeta", *t.zeta * gamma_sv(k), EntryKind::ConditionalLowerBound,
                "zeta(k) gamma_sv(k) = delta_k");
            add("zeta", *t.zeta, EntryKind::Parameter, "(k^2+2k)/(k^2+2k+1)");
        }
        for (std::size_t m : {k, l}) {
            const bool holds = delta_pair(m + 1) >= gamma_best(m).value;
            t.notes.push_back("condition delta_{m+1} >= gamma_m at m=" + std::to_string(m) + ": " +
                              (holds ? "true" : "false") + " (recorded, no inference drawn)");
        }
    }

    if (q >= 2) {
        t.tau = tau(p);
        add("tau", t.tau->tau, EntryKind::ConditionalLowerBound,
            "general partition, block 1; s-adaptable with s > d - p_1/2 + 1/3");
        add("tau_alpha", t.tau->alpha, EntryKind::Parameter, "optimizing alpha for tau");
        add("tau_max", t.tau->max, EntryKind::ConditionalLowerBound,
            "general-partition formula maximized over blocks (argmax block " +
                std::to_string(t.tau->argmax + 1) + ")");
        Rational dyadic = min(t.gamma_sv[0], t.eta[0]);
        for (std::size_t i = 1; i < q; ++i) dyadic = max(dyadic, min(t.gamma_sv[i], t.eta[i]));
        add("dyadic_min", dyadic, EntryKind::ConditionalLowerBound,
            "max over blocks of min(gamma_i, eta_i)");
    }

    if (q >= 2 && p.all_twos()) {
        t.theta = theta_partition_of_twos(q);
        add("theta", t.theta->closed_form.theta, EntryKind::ConditionalLowerBound,
            "(1+eta)/(q+(q-1)eta) with eta = 2/(4(q-1))");
        add("theta0_displayed", t.theta->displayed, EntryKind::Parameter,
            std::string("1/q + 2/(q(4q+1)(q-1)); ") +
                (t.theta->discrepancy ? "DISCREPANCY: differs from closed form" : "agrees with closed form"));
    }

    add("grid_upper", t.grid_upper, EntryKind::GridUpper, "integer cube growth 2q/d");

    t.notes.push_back(
        "gamma_m uses 2/m - 2/(m(m+2)); the variant m/2 - 2/(m(m+2)) exceeds 1 for m >= 3 and is not used");
    if (t.theta && t.theta->discrepancy) {
        t.notes.push_back("theta closed form " + t.theta->closed_form.theta.str() +
                          " differs from displayed theta0 " + t.theta->displayed.str() + "; both emitted");
    }
    if (t.tau && !t.tau->first_block_maximizes) {
        t.notes.push_back("tau is not maximized by block 1 for this partition");
    }
    return t;
}

std::vector<Partition> increasing_partitions(std::size_t d) {
    std::vector<Partition> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rem, std::size_t min_part) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t v = min_part; v <= rem; ++v) {
            if (rem - v != 0 && rem - v < v) continue;
            cur.push_back(v);
            rec(rem - v, v);
            cur.pop_back();
        }
    };
    if (d >= 2) rec(d, 2);
    return out;
}

}  // namespace mpdist
