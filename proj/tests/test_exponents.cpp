#include "mpdist/error.hpp"
#include "mpdist/exponents.hpp"
#include "mpdist/json_io.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

using namespace mpdist;
using Q = boost::multiprecision::cpp_rational;

namespace {

// Independent evaluation of the closed forms in arbitrary precision.
Q ref_gamma(long m) { return Q(2, m) - Q(2, m * (m + 2)); }
Q ref_eta(long d, long pi) { return Q(2, 2 * d - (pi - 1)); }
Q ref_tau(const std::vector<long>& parts, std::size_t i) {
    long d = 0;
    for (auto p : parts) d += p;
    const long q = static_cast<long>(parts.size());
    const Q gq = ref_gamma(parts.back());
    const Q s = ref_gamma(parts[i]) + ref_eta(d, parts[i]);
    return gq * s / (gq + Q(q - 1) * s);
}

bool same(const Rational& r, const Q& q) { return Q(r.num(), r.den()) == q; }

}  // namespace

TEST_CASE("gamma values") {
    CHECK(gamma_sv(2) == Rational(3, 4));
    CHECK(gamma_sv(3) == Rational(8, 15));
    CHECK(gamma_sv(4) == Rational(5, 12));
    CHECK(gamma_sv(100) == Rational(2, 100) - Rational(2, 10200));
    CHECK(gamma_sv(1000).to_double() * 1000 == doctest::Approx(2.0).epsilon(0.01));
    for (long m = 2; m <= 200; ++m) CHECK(same(gamma_sv(static_cast<std::size_t>(m)), ref_gamma(m)));
    CHECK(gamma_best(2).value == Rational(1));
    CHECK(gamma_best(2).note.find("logarithm") != std::string::npos);
    CHECK(gamma_best(3).value == Rational(3, 5));
    CHECK(gamma_best(4).value == Rational(5, 12));
    CHECK_THROWS_AS(gamma_sv(1), UsageError);
    CHECK_THROWS_AS(gamma_best(0), UsageError);
}

TEST_CASE("delta and eta") {
    CHECK(delta_pair(2) == Rational(2, 3));
    CHECK(delta_pair(3) == Rational(1, 2));
    CHECK(delta_pair(4) == Rational(2, 5));
    CHECK_THROWS_AS(delta_pair(1), UsageError);
    CHECK(eta_general(6, 2) == Rational(2, 11));
    CHECK(eta_general(4, 2) == Rational(2, 7));
    CHECK_THROWS_AS(eta_general(4, 5), UsageError);
    CHECK_THROWS_AS(eta_general(4, 1), UsageError);
}

TEST_CASE("theta") {
    CHECK(theta(3, Rational(1, 4)).theta == Rational(5, 14));
    CHECK(theta(3, Rational(1, 4)).alpha == Rational(5, 14));
    CHECK(theta(2, Rational(1)).theta == Rational(2, 3));
    // Approaching eta = 0 collapses to 1/q.
    CHECK(std::abs(theta(4, Rational(1, 1000000)).theta.to_double() - 0.25) < 1e-6);
    CHECK_THROWS_AS(theta(3, Rational(0)), UsageError);
    CHECK_THROWS_AS(theta(3, Rational(3, 2)), UsageError);
    CHECK_THROWS_AS(theta(1, Rational(1, 2)), UsageError);

    const auto t3 = theta_partition_of_twos(3);
    CHECK(t3.eta == Rational(1, 4));
    CHECK(t3.closed_form.theta == Rational(5, 14));
    CHECK(t3.displayed == Rational(14, 39));
    CHECK(t3.discrepancy);
}

TEST_CASE("tau") {
    const auto t222 = tau(Partition({2, 2, 2}));
    CHECK(t222.tau == Rational(123, 460));
    CHECK(t222.alpha == Rational(41, 115));
    CHECK(tau(Partition({2, 2})).tau == Rational(87, 200));
    CHECK_THROWS_AS(tau(Partition({4})), UsageError);

    for (std::size_t d = 4; d <= 14; ++d)
        for (const auto& p : increasing_partitions(d)) {
            if (p.q() < 2) continue;
            std::vector<long> parts;
            for (std::size_t i = 0; i < p.q(); ++i) parts.push_back(static_cast<long>(p.part(i)));
            const auto t = tau(p);
            REQUIRE(t.per_block.size() == p.q());
            for (std::size_t i = 0; i < p.q(); ++i) CHECK(same(t.per_block[i], ref_tau(parts, i)));
            CHECK(t.tau == t.per_block[0]);
            CHECK(t.max >= t.tau);
        }
}

TEST_CASE("tau asymptotic trend for partitions of twos") {
    const std::size_t q = 20, d = 40;
    const auto t = tau(Partition(std::vector<std::size_t>(q, 2)));
    const double trend = gamma_sv(2).to_double() * (1.0 / q + 1.0 / (d * q));
    CHECK(std::abs(t.tau.to_double() - trend) / trend < 0.10);
}

TEST_CASE("tau beats the trivial exponent for all partitions up to d = 60") {
    std::size_t checked = 0, failures = 0;
    for (std::size_t d = 4; d <= 60; ++d)
        for (const auto& p : increasing_partitions(d)) {
            if (p.q() < 2) continue;
            const auto t = tau(p);
            ++checked;
            // Equivalent form of the claim.
            const Rational g1 = gamma_sv(p.part(0)) + eta_general(d, p.part(0));
            if (!(t.tau > trivial_exponent_sv(p)) || !(g1 > gamma_sv(p.part(p.q() - 1)))) ++failures;
            const Rational inv_q(1, static_cast<std::int64_t>(p.q()));
            if (t.alpha < inv_q || t.alpha > Rational(1)) ++failures;
        }
    CHECK(checked > 100000);
    CHECK(failures == 0);
}

TEST_CASE("zeta") {
    CHECK(zeta(3) == Rational(15, 16));
    CHECK(zeta(4) == Rational(24, 25));
    CHECK(zeta(10) > zeta(3));
    CHECK(zeta(3) >= Rational(13, 14));
    for (std::size_t k = 3; k <= 1000; ++k) {
        CHECK(zeta(k) >= Rational(13, 14));
        CHECK(zeta(k + 1) > zeta(k));
        CHECK(zeta(k) == delta_pair(k) / gamma_sv(k));
    }
    CHECK_THROWS_AS(zeta(2), UsageError);
}

TEST_CASE("trivial and grid exponents") {
    CHECK(trivial_exponent(Partition({2, 3})) == Rational(3, 10));
    CHECK(trivial_exponent(Partition({2, 2})) == Rational(1, 2));
    CHECK(trivial_exponent_sv(Partition({2, 3})) == Rational(4, 15));
    CHECK(grid_exponent(Partition({2, 2})) == Rational(1));
    CHECK(grid_exponent(Partition({2, 3})) == Rational(4, 5));
    for (std::size_t d = 2; d <= 20; ++d)
        for (const auto& p : increasing_partitions(d)) CHECK(trivial_exponent(p) <= grid_exponent(p));
}

TEST_CASE("increasing_partitions") {
    CHECK(increasing_partitions(2).size() == 1);
    CHECK(increasing_partitions(3).size() == 1);
    CHECK(increasing_partitions(6).size() == 4);  // 6, 2+4, 3+3, 2+2+2
    CHECK(increasing_partitions(10).size() == 12);
    CHECK(increasing_partitions(1).empty());
}

TEST_CASE("exponent_report entries") {
    {
        const auto t = exponent_report(Partition({2, 2}));
        REQUIRE(t.find("b22_unconditional"));
        CHECK(t.find("b22_unconditional")->value == Rational(6, 11));
        CHECK(t.find("b22_unconditional")->kind == EntryKind::LowerBound);
        CHECK(t.find("b22_conditional")->value == Rational(2, 3));
        CHECK(t.find("b22_conditional")->kind == EntryKind::ConditionalLowerBound);
        CHECK(t.find("b22_sharp")->value == Rational(1));
        CHECK(t.find("grid_upper")->value == Rational(1));
        CHECK(t.find("tau")->value == Rational(87, 200));
        CHECK(t.find("trivial")->value == Rational(1, 2));
        CHECK(t.gamma_sv == std::vector<Rational>{Rational(3, 4), Rational(3, 4)});
        CHECK(t.eta == std::vector<Rational>{Rational(2, 7), Rational(2, 7)});
        CHECK(t.delta == std::vector<Rational>{Rational(2, 3), Rational(2, 3)});
    }
    {
        const auto t = exponent_report(Partition({2, 3}));
        REQUIRE(t.find("b23_gamma3"));
        CHECK(t.find("b23_gamma3")->value == Rational(3, 5));
        CHECK(t.find("trivial")->value == Rational(3, 10));
        CHECK(t.find("grid_upper")->value == Rational(4, 5));
    }
    {
        const auto t = exponent_report(Partition({3, 3}));
        REQUIRE(t.find("bkk_13_14"));
        CHECK(t.find("bkk_13_14")->value == Rational(13, 14) * gamma_sv(3));
        REQUIRE(t.zeta);
        CHECK(*t.zeta == Rational(15, 16));
        CHECK(t.find("bkk_zeta")->value == Rational(15, 16) * gamma_sv(3));
    }
    {
        const auto t = exponent_report(Partition({2, 2, 2}));
        REQUIRE(t.theta);
        CHECK(t.theta->discrepancy);
        CHECK(t.find("theta")->value == Rational(5, 14));
        CHECK(t.find("theta0_displayed")->value == Rational(14, 39));
        CHECK(t.find("theta0_displayed")->note.find("DISCREPANCY") != std::string::npos);
        CHECK(t.find("tau")->value == Rational(123, 460));
    }
    {
        const auto t = exponent_report(Partition({5}));
        CHECK_FALSE(t.tau);
        CHECK(t.find("tau") == nullptr);
        CHECK(t.find("trivial")->value == gamma_sv(5));
    }
    bool gamma_note = false;
    for (const auto& n : exponent_report(Partition({2, 2})).notes) gamma_note = gamma_note || n.find("m/2") != std::string::npos;
    CHECK(gamma_note);
}

TEST_CASE("exponent table values lie in (0, 2] and round-trip") {
    for (std::size_t d = 2; d <= 16; ++d)
        for (const auto& p : increasing_partitions(d)) {
            const auto t = exponent_report(p);
            for (const auto& e : t.entries) {
                CHECK(e.value > Rational(0));
                CHECK(e.value <= Rational(2));
            }
            const auto j = to_json(t);
            const auto back = exponent_table_from_json(j);
            CHECK(back.entries == t.entries);
            CHECK(to_json(back).dump() == j.dump());
        }
}

TEST_CASE("rational basics") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(1).str() == "1/1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational(1, 3).decimal() == "0.333333");
    CHECK(Rational(2, 3).decimal() == "0.666667");
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), UsageError);
    CHECK_THROWS_AS(Rational::parse("a/b"), UsageError);
    CHECK_THROWS(Rational(1) / Rational(0));
}
