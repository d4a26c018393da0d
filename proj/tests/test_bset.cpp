#include "mpdist/bset.hpp"
#include "mpdist/error.hpp"
#include "mpdist/generators.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace mpdist;

namespace {

PointSet pts(std::size_t d, std::vector<Point> v) { return PointSet(d, v); }

void check_against_oracle(const DistanceTupleStats& s, const std::map<DistanceTuple, std::uint64_t>& want) {
    REQUIRE(s.count() == want.size());
    std::size_t k = 0;
    for (const auto& [t, nu] : want) {
        CHECK(s.tuple(k) == t);
        CHECK(s.nu[k] == nu);
        ++k;
    }
}

}  // namespace

TEST_CASE("b_set small examples") {
    const Partition p({2, 2});
    const PointSet e = pts(4, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}});
    const auto s = b_set(e, p);
    CHECK(s.count() == 4);
    CHECK(s.tuples() == std::vector<DistanceTuple>{{{0, 0}}, {{0, 1}}, {{1, 0}}, {{1, 1}}});
    CHECK(s.multiplicity(DistanceTuple{{0, 0}}) == 3);
    CHECK(s.multiplicity(DistanceTuple{{1, 1}}) == 2);
    CHECK(s.multiplicity(DistanceTuple{{4, 4}}) == 0);
    CHECK(s.sum_nu() == 9);
    CHECK(s.total_pairs == 9);
    CHECK(s.includes_diagonal);

    const auto one = b_set(pts(5, {{1, 2, 3, 4, 5}}), Partition({2, 3}));
    CHECK(one.count() == 1);
    CHECK(one.tuple(0).is_zero());
}

TEST_CASE("b_set diagonal conventions") {
    const Partition p({2, 2});
    const PointSet e = pts(4, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}});
    BSetOptions off;
    off.include_diagonal = false;
    const auto s = b_set(e, p, off);
    CHECK(s.count() == 3);
    CHECK_FALSE(s.contains(DistanceTuple{{0, 0}}));
    CHECK(s.sum_nu() == 6);
    CHECK(s.total_pairs == 9);
    CHECK_FALSE(s.includes_diagonal);

    const auto single = b_set(pts(4, {{0, 0, 0, 0}}), p, off);
    CHECK(single.count() == 0);

    // Two sets sharing one point: only that pair is removed.
    const PointSet f = pts(4, {{0, 0, 0, 0}, {5, 5, 5, 5}});
    const auto two = b_set(e, f, p, off);
    CHECK(two.sum_nu() == 5);
    check_against_oracle(two, oracle::tuples(e, f, p, false));
    // Points with a zero tuple but no shared point keep nothing extra to drop.
    const PointSet g = pts(4, {{9, 9, 9, 9}});
    CHECK(b_set(e, g, p, off).sum_nu() == 3);
}

TEST_CASE("b_set sphere pair is a single tuple") {
    const Partition p({2, 2});
    auto [e, f] = sphere_pair(p, 25);
    const auto s = b_set(e, f, p);
    REQUIRE(s.count() == 1);
    CHECK(s.tuple(0) == DistanceTuple{{25, 25}});
    CHECK(s.nu[0] == 144);  // 12 lattice points on each circle
}

TEST_CASE("b_set matches the brute-force oracle") {
    SplitMix64 rng(99);
    for (int it = 0; it < 40; ++it) {
        const std::size_t d = 4 + rng.below(3);
        const std::vector<Partition> parts =
            d == 4 ? std::vector<Partition>{Partition({2, 2}), Partition({4})}
                   : (d == 5 ? std::vector<Partition>{Partition({2, 3})}
                             : std::vector<Partition>{Partition({2, 2, 2}), Partition({3, 3}), Partition({2, 4})});
        const Partition& p = parts[rng.below(parts.size())];
        const PointSet e = random_cube(d, 1 + rng.below(40), 3 + static_cast<std::int64_t>(rng.below(5)), rng.next());
        const PointSet f = random_cube(d, 1 + rng.below(40), 3, rng.next());
        for (bool diag : {true, false}) {
            BSetOptions o;
            o.include_diagonal = diag;
            o.threads = 1 + static_cast<unsigned>(rng.below(4));
            check_against_oracle(b_set(e, p, o), oracle::tuples(e, e, p, diag));
            check_against_oracle(b_set(e, f, p, o), oracle::tuples(e, f, p, diag));
        }
    }
}

TEST_CASE("b_set counting modes agree") {
    // Coordinates far apart push the key space past the dense limit.
    const Partition p({2, 2});
    const PointSet wide = random_cube(4, 300, 1'000'000, 5);
    const PointSet narrow = random_cube(4, 300, 10, 5);
    for (const PointSet* e : {&wide, &narrow}) {
        BSetOptions o;
        const auto a = b_set(*e, p, o);
        o.threads = 3;
        CHECK(b_set(*e, p, o) == a);
        check_against_oracle(a, oracle::tuples(*e, *e, p, true));
    }
    // Coordinates near the bound overflow a packed 64-bit key.
    const Coord b = coord_bound(4);
    const PointSet huge(4, std::vector<Coord>{b, b, b, b, -b, -b, -b, -b, 0, 0, 0, 0, 1, -b, 3, b});
    check_against_oracle(b_set(huge, p), oracle::tuples(huge, huge, p, true));
}

TEST_CASE("b_set errors") {
    const PointSet e = pts(4, {{0, 0, 0, 0}});
    CHECK_THROWS_AS(b_set(e, Partition({2, 3})), UsageError);
    CHECK_THROWS_AS(b_set(e, pts(5, {{0, 0, 0, 0, 0}}), Partition({2, 2})), UsageError);
    BSetOptions tight;
    tight.pair_budget = 3;
    const PointSet g = grid(4, 2);
    CHECK_THROWS_AS(b_set(g, Partition({2, 2}), tight), BudgetExceeded);
    CHECK_THROWS_AS(b_set(g, Partition({2, 2}), tight), UsageError);
}

TEST_CASE("top multiplicities order") {
    const PointSet e = grid(4, 2);
    const auto s = b_set(e, Partition({2, 2}));
    const auto top = s.top(3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].second >= top[1].second);
    CHECK(top[1].second >= top[2].second);
    CHECK(s.top(1000).size() == s.count());
    CHECK(s.max_nu() == top[0].second);
}

TEST_CASE("b_set_product") {
    const PointSet g01 = grid(2, 2);
    const PointSet g012 = grid(2, 3);
    {
        const std::vector<PointSet> blocks{g01, g01};
        CHECK(b_set_product(blocks).count() == 9);
    }
    {
        const std::vector<PointSet> blocks{g012, g012};
        const auto s = b_set_product(blocks);
        CHECK(s.count() == 36);
        CHECK(s == b_set(product_set(blocks), Partition({2, 2})));
        BSetOptions off;
        off.include_diagonal = false;
        CHECK(b_set_product(blocks, off).count() == 35);
        CHECK(b_set_product(blocks, off) == b_set(product_set(blocks), Partition({2, 2}), off));
    }
    {
        const PointSet a = random_cube(3, 20, 4, 3);
        const std::vector<PointSet> blocks{a};
        CHECK(b_set_product(blocks) == b_set(a, Partition({3})));
    }
    {
        const PointSet a = random_cube(2, 5, 4, 1);
        const PointSet b = random_cube(3, 7, 3, 2);
        const std::vector<PointSet> blocks{a, b};
        const PointSet e = product_set(blocks);
        CHECK(e.size() == 35);
        CHECK(b_set_product(blocks) == b_set(e, Partition({2, 3})));
    }
    const std::vector<PointSet> with_empty{g01, PointSet(2)};
    CHECK_THROWS_AS(b_set_product(with_empty), UsageError);
    const std::vector<PointSet> none;
    CHECK_THROWS_AS(b_set_product(none), UsageError);
    const std::vector<PointSet> not_increasing{grid(3, 2), g01};
    CHECK_THROWS_AS(b_set_product(not_increasing), UsageError);
}

TEST_CASE("product_set order") {
    const std::vector<PointSet> blocks{pts(2, {{0, 0}, {1, 1}}), pts(2, {{5, 5}, {6, 6}})};
    const PointSet e = product_set(blocks);
    REQUIRE(e.size() == 4);
    CHECK(Point(e[1].begin(), e[1].end()) == Point{0, 0, 6, 6});
    CHECK(Point(e[2].begin(), e[2].end()) == Point{1, 1, 5, 5});
}

TEST_CASE("quadruple_count") {
    const PointSet sq = grid(2, 2);
    const auto qc = quadruple_count(sq, sq);
    CHECK(qc.q_value == 96);
    CHECK(qc.class_sizes == std::vector<std::pair<SqDist, std::uint64_t>>{{0, 4}, {1, 8}, {2, 4}});
    CHECK(qc.unordered_variant() == 80);
    CHECK(qc.total_pairs == 16);

    const PointSet one = pts(2, {{0, 0}});
    CHECK(quadruple_count(one, one).q_value == 1);

    const auto mixed = quadruple_count(one, pts(2, {{0, 0}, {1, 0}}));
    CHECK(mixed.class_sizes == std::vector<std::pair<SqDist, std::uint64_t>>{{0, 1}, {1, 1}});
    CHECK(mixed.q_value == 2);
    CHECK_THROWS_AS(quadruple_count(one, pts(3, {{0, 0, 0}})), UsageError);
}

TEST_CASE("cs_lower_bound") {
    const PointSet sq = grid(2, 2);
    CHECK(cs_lower_bound(sq, sq) == Rational(8, 3));
    const PointSet one = pts(2, {{0, 0}});
    CHECK(cs_lower_bound(one, one) == Rational(1));
    const PointSet two = pts(2, {{0, 0}, {1, 0}});
    CHECK(cs_lower_bound(two, two) == Rational(2));
    CHECK(Rational(static_cast<std::int64_t>(oracle::distances(sq).size())) >= cs_lower_bound(sq, sq));
    CHECK_THROWS_AS(cs_lower_bound(PointSet(2), one), UsageError);
}

TEST_CASE("projection_bounds") {
    const Partition p({2, 2});
    {
        const auto pb = projection_bounds(grid(4, 2), p);
        CHECK(pb.delta_sizes == std::vector<std::size_t>{3, 3});
        CHECK(pb.projected_sizes == std::vector<std::size_t>{4, 4});
        CHECK(pb.lower_bound == 3);
        CHECK(b_set(grid(4, 2), p).count() == 9);
    }
    {
        const auto pb = projection_bounds(grid(4, 3), p);
        CHECK(pb.delta_sizes == std::vector<std::size_t>{6, 6});
        CHECK(pb.lower_bound == 6);
    }
    {
        const PointSet e = pts(4, {{1, 1, 0, 0}, {1, 1, 0, 3}, {1, 1, 2, 2}});
        const auto pb = projection_bounds(e, p);
        CHECK(pb.delta_sizes[0] == 1);
        CHECK(pb.projected_sizes[0] == 1);
    }
}
