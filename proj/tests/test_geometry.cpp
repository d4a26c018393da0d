#include "mpdist/error.hpp"
#include "mpdist/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace mpdist;

namespace {
Point pt(std::initializer_list<Coord> c) { return Point(c); }
}  // namespace

TEST_CASE("project slices block coordinates") {
    const Partition p22({2, 2});
    const Partition p23({2, 3});
    CHECK(project(pt({0, 0, 0, 0}), p22, 0) == pt({0, 0}));
    CHECK(project(pt({1, 2, 3, 4}), p22, 1) == pt({3, 4}));
    CHECK(project(pt({1, 2, 3, 4, 5}), p23, 1) == pt({3, 4, 5}));
    CHECK_THROWS_AS(project(pt({1, 2, 3, 4}), p22, 2), UsageError);
    CHECK_THROWS_AS(project(pt({1, 2, 3}), p22, 0), UsageError);
}

TEST_CASE("sq_dist") {
    CHECK(sq_dist(pt({0, 0}), pt({3, 4})) == 25);
    CHECK(sq_dist(pt({1, 1}), pt({1, 1})) == 0);
    CHECK(sq_dist(pt({0, 0, 0}), pt({1, 2, 2})) == 9);
    CHECK(sq_dist(pt({-5, 7}), pt({5, -7})) == 100 + 196);
    CHECK_THROWS_AS(sq_dist(pt({0, 0}), pt({0, 0, 0})), UsageError);
}

TEST_CASE("dist_tuple") {
    const Partition p22({2, 2});
    const Partition p23({2, 3});
    CHECK(dist_tuple(pt({0, 0, 0, 0}), pt({1, 2, 3, 4}), p22) == DistanceTuple{{5, 25}});
    CHECK(dist_tuple(pt({0, 0, 0, 0, 0}), pt({0, 1, 1, 1, 1}), p23) == DistanceTuple{{1, 3}});
    CHECK(dist_tuple(pt({3, 1, 4, 1, 5}), pt({3, 1, 4, 1, 5}), p23).is_zero());
    CHECK_FALSE(DistanceTuple{{0, 1}}.is_zero());
    CHECK(DistanceTuple{{5, 25}}.str() == "(5,25)");
    CHECK_THROWS_AS(dist_tuple(pt({0, 0, 0, 0}), pt({0, 0, 0, 0, 0}), p22), UsageError);
}

TEST_CASE("distance tuples order lexicographically") {
    CHECK(DistanceTuple{{1, 9}} < DistanceTuple{{2, 0}});
    CHECK(DistanceTuple{{2, 0}} < DistanceTuple{{2, 1}});
}

TEST_CASE("partition validation and parsing") {
    const Partition p = Partition::parse("2,3");
    CHECK(p.q() == 2);
    CHECK(p.dim() == 5);
    CHECK(p.offset(0) == 0);
    CHECK(p.offset(1) == 2);
    CHECK(p.offset(2) == 5);
    CHECK(p.str() == "(2,3)");
    CHECK(Partition::parse("2x3") == Partition({2, 3}));
    CHECK(Partition::parse(Partition({2, 2, 4}).str()) == Partition({2, 2, 4}));
    CHECK(Partition::parse("(2,2)") == Partition({2, 2}));
    CHECK(Partition::parse("4").q() == 1);
    CHECK(Partition({2, 2, 2}).all_twos());
    CHECK_FALSE(Partition({2, 3}).all_twos());
    CHECK_THROWS_AS(Partition({1, 3}), UsageError);
    CHECK_THROWS_AS(Partition({3, 2}), UsageError);
    CHECK_THROWS_AS(Partition(std::vector<std::size_t>{}), UsageError);
    CHECK_THROWS_AS(Partition::parse("2,a"), UsageError);
    CHECK_THROWS_AS(Partition::parse(""), UsageError);
}

TEST_CASE("point sets reject duplicates, ragged rows and oversized coordinates") {
    CHECK_THROWS_AS(PointSet(2, std::vector<Point>{pt({0, 0}), pt({0, 0})}), UsageError);
    CHECK_THROWS_AS(PointSet(2, std::vector<Point>{pt({0, 0}), pt({0})}), UsageError);
    CHECK_THROWS_AS(PointSet(2, std::vector<Coord>{1, 2, 3}), UsageError);
    CHECK_THROWS_AS(PointSet(0), UsageError);
    const Coord b = coord_bound(4);
    CHECK_NOTHROW(PointSet(4, std::vector<Coord>{b, -b, 0, 0}));
    CHECK_THROWS_AS(PointSet(4, std::vector<Coord>{b + 1, 0, 0, 0}), UsageError);
}

TEST_CASE("extreme coordinates keep squared distances in range") {
    const std::size_t d = 3;
    const Coord b = coord_bound(d);
    const PointSet e(d, std::vector<Coord>{b, b, b, -b, -b, -b});
    // Each squared coordinate difference is (2b)^2 <= 2^62 / d.
    const SqDist s = sq_dist(e[0], e[1]);
    CHECK(s > 0);
    CHECK(static_cast<unsigned __int128>(s) == 3 * static_cast<unsigned __int128>(2 * b) * (2 * b));
}

TEST_CASE("point set accessors, subset and fingerprint") {
    const PointSet e(2, std::vector<Point>{pt({0, 0}), pt({1, 0}), pt({0, 1})});
    CHECK(e.size() == 3);
    CHECK(e.dim() == 2);
    CHECK(e.contains(pt({1, 0})));
    CHECK_FALSE(e.contains(pt({1, 1})));
    const std::vector<std::size_t> idx{2, 0};
    const PointSet s = e.subset(idx);
    CHECK(s.size() == 2);
    CHECK(Point(s[0].begin(), s[0].end()) == pt({0, 1}));
    CHECK(e.fingerprint() == PointSet(2, std::vector<Point>{pt({0, 0}), pt({1, 0}), pt({0, 1})}).fingerprint());
    CHECK(e.fingerprint() != s.fingerprint());
    const std::vector<std::size_t> bad{3};
    CHECK_THROWS_AS(e.subset(bad), UsageError);
}

TEST_CASE("project_set deduplicates in first-occurrence order") {
    const PointSet e(4, std::vector<Point>{pt({1, 1, 0, 0}), pt({0, 0, 0, 1}), pt({1, 1, 5, 5})});
    const PointSet pr = project_set(e, Partition({2, 2}), 0);
    CHECK(pr.size() == 2);
    CHECK(Point(pr[0].begin(), pr[0].end()) == pt({1, 1}));
    CHECK(Point(pr[1].begin(), pr[1].end()) == pt({0, 0}));
}

TEST_CASE("point file format") {
    const PointSet e(3, std::vector<Point>{pt({-1, 0, 7}), pt({2, 3, -4})});
    const std::string text = to_text(e);
    CHECK(text == "dim=3 n=2\n-1 0 7\n2 3 -4\n");
    CHECK(parse_point_set(text) == e);
    CHECK(to_text(parse_point_set(text)) == text);

    CHECK(parse_point_set("# header comment\n\ndim=2 n=1\n# a point\n  5   6 \n") ==
          PointSet(2, std::vector<Point>{pt({5, 6})}));
    CHECK(parse_point_set("dim=2 n=0\n").size() == 0);

    CHECK_THROWS_AS(parse_point_set("dim=2 n=2\n0 0\n"), UsageError);
    CHECK_THROWS_AS(parse_point_set("dim=2 n=1\n0 0 0\n"), UsageError);
    CHECK_THROWS_AS(parse_point_set("dim=2 n=1\n0 x\n"), UsageError);
    CHECK_THROWS_AS(parse_point_set("n=1 dim=2\n0 0\n"), UsageError);
    CHECK_THROWS_AS(parse_point_set("dim=2 n=2\n0 0\n0 0\n"), UsageError);
    CHECK_THROWS_AS(parse_point_set(""), UsageError);

    std::stringstream two("dim=2 n=1\n0 0\ndim=2 n=2\n1 1\n2 2\n");
    const auto sets = read_point_sets(two);
    REQUIRE(sets.size() == 2);
    CHECK(sets[1].size() == 2);
}

TEST_CASE("tuple equality transfers to true distances") {
    // Squares are injective on non-negative values, so equal square tuples mean equal distances.
    const Partition p({2, 2});
    const PointSet e(4, std::vector<Point>{pt({0, 0, 0, 0}), pt({3, 4, 0, 0}), pt({5, 0, 1, 0}), pt({0, 5, 0, 1})});
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j) {
            const auto t = dist_tuple(e[i], e[j], p);
            for (std::size_t k = 0; k < e.size(); ++k)
                for (std::size_t l = 0; l < e.size(); ++l) {
                    const auto u = dist_tuple(e[k], e[l], p);
                    bool real_equal = true;
                    for (std::size_t b = 0; b < 2; ++b)
                        real_equal = real_equal && std::sqrt(static_cast<double>(t.values[b])) ==
                                                       std::sqrt(static_cast<double>(u.values[b]));
                    CHECK((t == u) == real_equal);
                }
        }
}
