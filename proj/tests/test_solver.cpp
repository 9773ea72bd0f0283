#include "fairmsr/solver.hpp"
#include "fairmsr/oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace fairmsr;
using testutil::make_points;

TEST_SUITE("solver") {

TEST_CASE("tuning knobs") {
    CHECK(gamma_for(0.2) ==
          doctest::Approx(1.2 + 2 * std::sqrt(0.2)).epsilon(1e-12));
    CHECK(cluster_cap(0.3) == 1541); // ceil(32*1.3/0.027)
    CHECK(eps_working(SolveMode::engineering, 0.3, 5) == 0.3);
    CHECK(eps_working(SolveMode::theoretical, 0.45, 2) == 0.0003515625);
    CHECK(guarantee_factor(SolveMode::theoretical, 0.45, 2) ==
          doctest::Approx(1.45));
    double g = gamma_for(0.3);
    CHECK(guarantee_factor(SolveMode::engineering, 0.3, 2) ==
          doctest::Approx(1.3 * 1.3 * g));
}

TEST_CASE("selection: one point, one symbol") {
    PointSet pts = make_points({{0, 0}});
    SelectionParams p{1, 0.2, {1.0}};
    auto out = selection(pts, p, GuessString{1});
    CHECK(out.consumed == 1);
    REQUIRE(out.S.size() == 1);
    CHECK(out.S[0] == std::vector<std::size_t>{0});
    CHECK(out.balls[0].radius == 0.0);
    CHECK(out.next_frontier == npos);
}

TEST_CASE("selection: two far pairs, u = 1 1 2 2") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    SelectionParams p{2, 0.2, {0.55, 0.55}};
    auto out = selection(pts, p, GuessString{1, 1, 2, 2});
    CHECK(out.consumed == 4);
    CHECK(out.S[0] == std::vector<std::size_t>{0, 1});
    CHECK(out.S[1] == std::vector<std::size_t>{2, 3});
    REQUIRE(out.used[0]);
    REQUIRE(out.used[1]);
    // both pair balls stay well clear of each other
    CHECK(distance(out.balls[0].center, out.balls[1].center) >
          out.balls[0].radius + out.balls[1].radius);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(ball_contains(out.balls[0], pts[i]));
    for (std::size_t i = 2; i < 4; ++i)
        CHECK(ball_contains(out.balls[1], pts[i]));
}

TEST_CASE("selection: a grown ball swallows the other cluster's singleton") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {2, 0}});
    SelectionParams p{2, 0.2, {1.0, 1.0}};
    auto out = selection(pts, p, GuessString{1, 2, 1});
    CHECK(out.consumed == 3);
    CHECK(out.S[0] == std::vector<std::size_t>{0, 2});
    CHECK(out.S[1] == std::vector<std::size_t>{1});
    // cluster 1's enlarged ball covers everything, cluster 2 stays a
    // zero-radius terminal singleton
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(ball_contains(out.balls[0], pts[i]));
    CHECK(out.balls[1].radius == 0.0);
    CHECK(out.balls[1].center == std::vector<double>{1.0, 0.0});
}

TEST_CASE("selection: hidden leftovers land on the lowest singleton") {
    // second point sits inside the first singleton's exclusion ball and
    // the string stops there, so the ball must stretch to adopt it
    PointSet pts = make_points({{0, 0}, {0.05, 0}});
    SelectionParams p{1, 0.2, {1.0}}; // exclusion radius 1/6
    auto out = selection(pts, p, GuessString{1});
    CHECK(out.consumed == 1);
    CHECK(out.S[0] == std::vector<std::size_t>{0});
    CHECK(out.balls[0].radius == doctest::Approx(0.05));
    CHECK(out.next_frontier == npos);
}

TEST_CASE("selection: frontier reporting and consumption bound") {
    PointSet pts = make_points({{0, 0}, {1, 0}});
    SelectionParams p{2, 0.2, {0.1, 0.1}};
    auto out0 = selection(pts, p, GuessString{});
    CHECK(out0.consumed == 0);
    CHECK(out0.next_frontier == 0);

    auto out1 = selection(pts, p, GuessString{1});
    CHECK(out1.consumed == 1);
    CHECK(out1.next_frontier == 1);

    // spare symbols beyond the point supply stay unread
    auto out_long = selection(pts, p, GuessString{1, 2, 1, 2, 1});
    CHECK(out_long.consumed <= pts.size());
}

TEST_CASE("selection input validation") {
    PointSet pts = make_points({{0, 0}});
    SelectionParams bad_sym{2, 0.2, {1.0, 1.0}};
    CHECK_THROWS_AS(selection(pts, bad_sym, GuessString{3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(selection(pts, bad_sym, GuessString{0}),
                    std::invalid_argument);
    SelectionParams bad_radius{1, 0.2, {0.0}};
    CHECK_THROWS_AS(selection(pts, bad_radius, GuessString{1}),
                    std::invalid_argument);
    SelectionParams bad_len{2, 0.2, {1.0}};
    CHECK_THROWS_AS(selection(pts, bad_len, GuessString{1}),
                    std::invalid_argument);
}

TEST_CASE("selection growth trace only fires on real growth") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    SelectionParams p{2, 0.2, {0.55, 0.55}};
    SelectionTrace trace;
    selection(pts, p, GuessString{1, 1, 2, 2}, &trace);
    for (const auto& ev : trace.growth) {
        CHECK(ev.new_radius >= ev.old_radius - 1e-12);
        CHECK(ev.cluster >= 1);
        CHECK(ev.cluster <= 2);
    }
}

TEST_CASE("balls_to_partition basics") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {5, 0}, {9, 0}});
    std::vector<Ball> balls = {{{0.5, 0.0}, 0.6}, {{9.0, 0.0}, 0.1}};
    auto part = balls_to_partition(pts, balls);
    REQUIRE(part.clustering.clusters.size() == 2);
    CHECK(part.clustering.clusters[0] == std::vector<std::size_t>{0, 1});
    CHECK(part.clustering.clusters[1] == std::vector<std::size_t>{3});
    CHECK(part.ball_index == std::vector<std::size_t>{0, 1});
    CHECK(part.uncovered == std::vector<std::size_t>{2});
}

TEST_CASE("balls_to_partition prefers the lowest containing ball") {
    PointSet pts = make_points({{0, 0}});
    std::vector<Ball> balls = {{{0.0, 0.0}, 1.0}, {{0.0, 0.0}, 2.0}};
    auto part = balls_to_partition(pts, balls);
    REQUIRE(part.clustering.clusters.size() == 1);
    CHECK(part.ball_index[0] == 0);
    CHECK(part.uncovered.empty());
}

TEST_CASE("balls_to_partition drops empty balls") {
    PointSet pts = make_points({{0, 0}});
    std::vector<Ball> balls = {{{50.0, 0.0}, 1.0}, {{0.0, 0.0}, 1.0}};
    auto part = balls_to_partition(pts, balls);
    REQUIRE(part.clustering.clusters.size() == 1);
    CHECK(part.ball_index[0] == 1);
}

TEST_CASE("clustering_search solves the two-pair instance at the right r_max") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    auto sol = clustering_search(pts, 2, 0.3, 0.5, nullptr,
                                 ConstraintSpec::unconstrained());
    REQUIRE(sol.feasible);
    CHECK(sol.refined_cost == doctest::Approx(1.0));
    CHECK(sol.clustering.clusters.size() == 2);
}

TEST_CASE("solve with k = 1 reproduces the exact enclosing ball") {
    std::mt19937_64 g(91);
    for (int t = 0; t < 10; ++t) {
        PointSet pts = testutil::random_points(g, 8, 3);
        auto sol = solve(pts, 1, 0.3, nullptr,
                         ConstraintSpec::unconstrained());
        REQUIRE(sol.feasible);
        CHECK(sol.refined_cost ==
              doctest::Approx(exact_meb(pts).radius).epsilon(1e-9));
    }
}

TEST_CASE("solve finds the two-pair optimum") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    auto sol = solve(pts, 2, 0.3, nullptr, ConstraintSpec::unconstrained());
    REQUIRE(sol.feasible);
    CHECK(sol.refined_cost == doctest::Approx(1.0));
    CHECK(!sol.from_baseline);
    CHECK(sol.reported_cost >= sol.refined_cost - 1e-9);
    CHECK(sol.diag.jobs > 0);
    CHECK(sol.diag.nodes > 0);
}

TEST_CASE("exact fairness rules out the cheap same-color pairs") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    ColorTable colors;
    colors.labels = {"red", "blue"};
    colors.color_of = {0, 0, 1, 1}; // same-color pairs are the cheap ones
    auto sol =
        solve(pts, 2, 0.3, &colors, ConstraintSpec::exact_fairness());
    REQUIRE(sol.feasible);
    // the unconstrained optimum (two pairs, cost 1) is unfair; the fair
    // optimum is one cluster of everything at radius 50.5
    CHECK(sol.refined_cost == doctest::Approx(50.5));
    for (const auto& c : sol.clustering.clusters)
        CHECK(satisfies_cluster(c, pts.size(), &colors,
                                ConstraintSpec::exact_fairness()));

    auto free_sol = solve(pts, 2, 0.3, nullptr,
                          ConstraintSpec::unconstrained());
    CHECK(free_sol.refined_cost < sol.refined_cost);
}

TEST_CASE("lower bound that only one cluster can satisfy") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    auto sol =
        solve(pts, 2, 0.3, nullptr, ConstraintSpec::lower_bound_of(3));
    REQUIRE(sol.feasible);
    CHECK(sol.from_baseline);
    CHECK(sol.refined_cost == doctest::Approx(50.5));
    CHECK(sol.clustering.clusters.size() == 1);
}

TEST_CASE("coincident points cost nothing") {
    PointSet pts = make_points({{3, 3}, {3, 3}, {3, 3}});
    auto sol = solve(pts, 2, 0.3, nullptr, ConstraintSpec::unconstrained());
    REQUIRE(sol.feasible);
    CHECK(sol.refined_cost == 0.0);
}

TEST_CASE("epsilon domain is enforced") {
    PointSet pts = make_points({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(
        solve(pts, 1, 0.0, nullptr, ConstraintSpec::unconstrained()),
        std::invalid_argument);
    CHECK_THROWS_AS(
        solve(pts, 1, 0.5, nullptr, ConstraintSpec::unconstrained()),
        std::invalid_argument);
    CHECK_THROWS_AS(
        solve(pts, 0, 0.3, nullptr, ConstraintSpec::unconstrained()),
        std::invalid_argument);
}

TEST_CASE("k-center radius path needs a registered constrained routine") {
    PointSet pts = make_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    ColorTable colors;
    colors.labels = {"red", "blue"};
    colors.color_of = {0, 1, 0, 1};
    SolveOptions opts;
    opts.path = RadiusPath::kcenter;
    CHECK_THROWS_AS(solve(pts, 2, 0.3, &colors,
                          ConstraintSpec::exact_fairness(), opts),
                    std::invalid_argument);
}

TEST_CASE("worker count never changes the answer") {
    std::mt19937_64 g(97);
    for (int t = 0; t < 5; ++t) {
        PointSet pts = testutil::random_points(g, 7, 2);
        SolveOptions one, three;
        one.workers = 1;
        three.workers = 3;
        auto a = solve(pts, 2, 0.3, nullptr,
                       ConstraintSpec::unconstrained(), one);
        auto b = solve(pts, 2, 0.3, nullptr,
                       ConstraintSpec::unconstrained(), three);
        CHECK(a.refined_cost == b.refined_cost);
        CHECK(a.reported_cost == b.reported_cost);
        CHECK(a.guess == b.guess);
        CHECK(a.radii == b.radii);
        CHECK(a.clustering.clusters == b.clustering.clusters);
    }
}

TEST_CASE("solver never beats the oracle, never strays past the factor") {
    std::mt19937_64 g(101);
    for (int t = 0; t < 10; ++t) {
        PointSet pts = testutil::random_points(g, 5 + t % 3, 2);
        auto opt = exact_msr(pts, 2, nullptr, ConstraintSpec::unconstrained());
        auto sol = solve(pts, 2, 0.3, nullptr,
                         ConstraintSpec::unconstrained());
        REQUIRE(opt.feasible);
        REQUIRE(sol.feasible);
        CHECK(sol.refined_cost >= opt.cost - 1e-9);
        if (opt.cost > 1e-12) {
            double bound = guarantee_factor(SolveMode::engineering, 0.3, 2);
            CHECK(sol.refined_cost <= bound * opt.cost + 1e-9);
        }
    }
}

TEST_CASE("theoretical mode honors the 1+eps promise on a micro instance") {
    PointSet pts =
        make_points({{0, 0}, {0.9, 0}, {0.3, 0.4}, {7, 7}, {7.8, 7}, {7.4, 7.5}});
    auto opt = exact_msr(pts, 2, nullptr, ConstraintSpec::unconstrained());
    auto sol = solve(pts, 2, 0.45, nullptr, ConstraintSpec::unconstrained(),
                     SolveOptions{SolveMode::theoretical});
    REQUIRE(opt.feasible);
    REQUIRE(sol.feasible);
    CHECK(sol.eps_work == 0.0003515625);
    CHECK(sol.refined_cost <= 1.45 * opt.cost + 1e-9);
    CHECK(sol.refined_cost >= opt.cost - 1e-9);
}

TEST_CASE("infeasible spec yields feasible == false, not a throw") {
    PointSet pts = make_points({{0, 0}, {1, 0}});
    auto sol =
        solve(pts, 2, 0.3, nullptr, ConstraintSpec::lower_bound_of(5));
    CHECK(!sol.feasible);
}

} // TEST_SUITE
