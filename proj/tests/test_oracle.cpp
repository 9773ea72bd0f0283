#include "fairmsr/oracle.hpp"
#include "fairmsr/errors.hpp"
#include "fairmsr/geometry.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

using namespace fairmsr;
using testutil::make_points;

TEST_SUITE("oracle") {

TEST_CASE("two distant points split into free singletons") {
    auto res = exact_msr(make_points({{0, 0}, {2, 0}}), 2, nullptr,
                         ConstraintSpec::unconstrained());
    CHECK(res.feasible);
    CHECK(res.cost == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("two-pair instance has cost 1") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    auto res = exact_msr(pts, 2, nullptr, ConstraintSpec::unconstrained());
    CHECK(res.feasible);
    CHECK(res.cost == doctest::Approx(1.0));
    REQUIRE(res.clustering.clusters.size() == 2);
    CHECK(res.clustering.clusters[0] == std::vector<std::size_t>{0, 1});
    CHECK(res.clustering.clusters[1] == std::vector<std::size_t>{2, 3});
    CHECK(res.enumerated > 0);
}

TEST_CASE("exact fairness keeps the same optimum when colors alternate") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    ColorTable colors;
    colors.labels = {"red", "blue"};
    colors.color_of = {0, 1, 0, 1};
    auto res = exact_msr(pts, 2, &colors, ConstraintSpec::exact_fairness());
    CHECK(res.feasible);
    CHECK(res.cost == doctest::Approx(1.0));
    CHECK(res.clustering.clusters[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("outliers drop the expensive point") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {500, 0}});
    auto strict =
        exact_msr(pts, 1, nullptr, ConstraintSpec::unconstrained());
    auto relaxed = exact_msr(pts, 1, nullptr, ConstraintSpec::outliers_of(1));
    CHECK(relaxed.feasible);
    CHECK(relaxed.cost < strict.cost);
    CHECK(relaxed.cost ==
          doctest::Approx(exact_meb(make_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}}))
                              .radius));
    REQUIRE(relaxed.outliers.size() == 1);
    CHECK(relaxed.outliers[0] == 4);
}

TEST_CASE("monotone in k") {
    std::mt19937_64 g(67);
    for (int t = 0; t < 15; ++t) {
        PointSet pts = testutil::random_points(g, 6, 2);
        auto k2 = exact_msr(pts, 2, nullptr, ConstraintSpec::unconstrained());
        auto k3 = exact_msr(pts, 3, nullptr, ConstraintSpec::unconstrained());
        CHECK(k3.cost <= k2.cost + 1e-12);
    }
}

TEST_CASE("clusters come out in first-touch order") {
    std::mt19937_64 g(71);
    for (int t = 0; t < 10; ++t) {
        PointSet pts = testutil::random_points(g, 7, 2);
        auto res = exact_msr(pts, 3, nullptr, ConstraintSpec::unconstrained());
        REQUIRE(res.feasible);
        std::size_t last_first = 0;
        for (std::size_t c = 0; c < res.clustering.clusters.size(); ++c) {
            REQUIRE(!res.clustering.clusters[c].empty());
            std::size_t first = *std::min_element(
                res.clustering.clusters[c].begin(),
                res.clustering.clusters[c].end());
            if (c > 0) CHECK(first > last_first);
            last_first = first;
        }
        CHECK(res.clustering.clusters[0][0] == 0);
    }
}

TEST_CASE("infeasible constraints are reported, not thrown") {
    PointSet pts = make_points({{0, 0}, {1, 0}});
    auto res = exact_msr(pts, 2, nullptr, ConstraintSpec::lower_bound_of(5));
    CHECK(!res.feasible);
}

TEST_CASE("budget and size guards") {
    std::mt19937_64 g(73);
    PointSet pts = testutil::random_points(g, 12, 2);
    OracleOptions tight;
    tight.partition_budget = 10;
    CHECK_THROWS_AS(
        exact_msr(pts, 2, nullptr, ConstraintSpec::unconstrained(), tight),
        ResourceError);

    PointSet big = testutil::random_points(g, 63, 2);
    CHECK_THROWS_AS(
        exact_msr(big, 2, nullptr, ConstraintSpec::unconstrained()),
        std::invalid_argument);

    CHECK_THROWS_AS(exact_msr(pts, 2, nullptr, ConstraintSpec::exact_fairness()),
                    std::invalid_argument);
}

} // TEST_SUITE
