#include "fairmsr/constraints.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace fairmsr;

namespace {

ColorTable colors_of(std::vector<int> ids,
                     std::vector<std::string> labels = {"red", "blue"}) {
    ColorTable t;
    t.color_of = std::move(ids);
    t.labels = std::move(labels);
    return t;
}

} // namespace

TEST_SUITE("constraints") {

TEST_CASE("parse_rational") {
    CHECK(parse_rational("0.25").num == 1);
    CHECK(parse_rational("0.25").den == 4);
    CHECK(parse_rational("1/2").num == 1);
    CHECK(parse_rational("1/2").den == 2);
    CHECK(parse_rational("1").num == 1);
    CHECK(parse_rational("1").den == 1);
    CHECK(parse_rational("0").num == 0);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("-0.5"), std::invalid_argument);
}

TEST_CASE("constraint grammar rendering") {
    CHECK(to_string(ConstraintSpec::unconstrained()) == "none");
    CHECK(to_string(ConstraintSpec::lower_bound_of(3)) == "lower-bound:3");
    CHECK(to_string(ConstraintSpec::outliers_of(2)) == "outliers:2");
    CHECK(to_string(ConstraintSpec::exact_fairness()) == "exact-fairness");
    CHECK(to_string(ConstraintSpec::min_balance_of(parse_rational("1/2"))) ==
          "min-balance:1/2");
    CHECK(to_string(ConstraintSpec::exact_balance()) == "exact-balance");
}

TEST_CASE("exact fairness on two colors") {
    // 2 red + 2 blue; indices 0,2 red and 1,3 blue.
    ColorTable t = colors_of({0, 1, 0, 1});
    Clustering mixed{{{0, 1}, {2, 3}}};
    Clustering split{{{0, 2}, {1, 3}}};
    CHECK(satisfies(mixed, 4, &t, ConstraintSpec::exact_fairness()));
    CHECK(!satisfies(split, 4, &t, ConstraintSpec::exact_fairness()));
}

TEST_CASE("min balance") {
    // 3 red + 1 blue in one cluster: balance 1/3 < 1/2.
    ColorTable t = colors_of({0, 0, 0, 1});
    Clustering all{{{0, 1, 2, 3}}};
    CHECK(!satisfies(all, 4, &t,
                     ConstraintSpec::min_balance_of(parse_rational("0.5"))));
    CHECK(satisfies(all, 4, &t,
                    ConstraintSpec::min_balance_of(parse_rational("1/3"))));
    // A single-color cluster has balance 0.
    ColorTable mono = colors_of({0, 0, 1, 1});
    Clustering bad{{{0, 1}, {2, 3}}};
    CHECK(!satisfies(bad, 4, &mono,
                     ConstraintSpec::min_balance_of(parse_rational("0.1"))));
    // Exactly two colors required.
    ColorTable three = colors_of({0, 1, 2, 0}, {"a", "b", "c"});
    CHECK_THROWS_AS(
        satisfies(all, 4, &three,
                  ConstraintSpec::min_balance_of(parse_rational("0.5"))),
        std::invalid_argument);
}

TEST_CASE("min balance is invariant under color swap") {
    std::mt19937_64 g(23);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + g() % 10;
        std::vector<int> ids(n);
        for (auto& c : ids) c = static_cast<int>(g() % 2);
        ColorTable t = colors_of(ids);
        std::vector<int> flipped(ids);
        for (auto& c : flipped) c = 1 - c;
        ColorTable tf = colors_of(flipped);
        Clustering cl{{{}}};
        for (std::size_t i = 0; i < n; ++i) cl.clusters[0].push_back(i);
        auto spec = ConstraintSpec::min_balance_of(parse_rational("1/3"));
        CHECK(satisfies(cl, n, &t, spec) == satisfies(cl, n, &tf, spec));
    }
}

TEST_CASE("exact fairness is invariant under point replication") {
    std::mt19937_64 g(29);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + g() % 8;
        std::vector<int> ids(n);
        for (auto& c : ids) c = static_cast<int>(g() % 2);
        ColorTable t = colors_of(ids);
        Clustering cl;
        cl.clusters.resize(2);
        for (std::size_t i = 0; i < n; ++i)
            cl.clusters[g() % 2].push_back(i);
        bool base = satisfies(cl, n, &t, ConstraintSpec::exact_fairness());
        for (int m : {2, 3}) {
            std::vector<int> rep_ids;
            Clustering rep;
            rep.clusters.resize(2);
            for (std::size_t i = 0; i < n; ++i)
                for (int c = 0; c < m; ++c) rep_ids.push_back(ids[i]);
            for (int side = 0; side < 2; ++side)
                for (std::size_t i : cl.clusters[side])
                    for (int c = 0; c < m; ++c)
                        rep.clusters[side].push_back(i * m + c);
            ColorTable tr = colors_of(rep_ids);
            CHECK(satisfies(rep, n * m, &tr,
                            ConstraintSpec::exact_fairness()) == base);
        }
    }
}

TEST_CASE("lower bound and outliers") {
    Clustering sizes35{{{0, 1, 2}, {3, 4, 5, 6, 7}}};
    CHECK(!satisfies(sizes35, 8, nullptr, ConstraintSpec::lower_bound_of(4)));
    CHECK(satisfies(sizes35, 8, nullptr, ConstraintSpec::lower_bound_of(3)));

    Clustering partial{{{0, 1}, {2, 3}}};
    CHECK(satisfies(partial, 5, nullptr, ConstraintSpec::outliers_of(1)));
    CHECK(!satisfies(partial, 5, nullptr, ConstraintSpec::outliers_of(0)));
    CHECK(!satisfies(partial, 5, nullptr, ConstraintSpec::unconstrained()));
}

TEST_CASE("empty clusters are vacuously fine") {
    ColorTable t = colors_of({0, 1});
    Clustering with_empty{{{0, 1}, {}}};
    CHECK(satisfies(with_empty, 2, &t, ConstraintSpec::exact_fairness()));
    CHECK(satisfies(with_empty, 2, nullptr, ConstraintSpec::lower_bound_of(2)));
    auto rb = ConstraintSpec::range_balance_of(
        {parse_rational("1/2"), parse_rational("1/2")},
        {parse_rational("1/2"), parse_rational("1/2")});
    CHECK(satisfies_cluster({}, 2, &t, rb));
}

TEST_CASE("range balance") {
    ColorTable t = colors_of({0, 1, 0, 1});
    auto rb = ConstraintSpec::range_balance_of(
        {parse_rational("1/4"), parse_rational("1/4")},
        {parse_rational("3/4"), parse_rational("3/4")});
    CHECK(satisfies_cluster({0, 1}, 4, &t, rb));
    CHECK(!satisfies_cluster({0, 2}, 4, &t, rb)); // all red: 1 > 3/4
}

TEST_CASE("exact balance") {
    ColorTable t = colors_of({0, 1, 0, 1});
    CHECK(satisfies_cluster({0, 1}, 4, &t, ConstraintSpec::exact_balance()));
    CHECK(!satisfies_cluster({0, 1, 2}, 4, &t,
                             ConstraintSpec::exact_balance()));
}

TEST_CASE("merged") {
    CHECK(merged({1, 2}, {3}) == std::vector<std::size_t>{1, 2, 3});
    CHECK(merged({}, {5}) == std::vector<std::size_t>{5});
    CHECK(merged({0, 4}, {2, 6}) == std::vector<std::size_t>{0, 2, 4, 6});
    CHECK_THROWS_AS(merged({1, 2}, {2, 3}), std::invalid_argument);
}

TEST_CASE("color-dependent specs demand colors") {
    Clustering cl{{{0, 1}}};
    CHECK_THROWS_AS(satisfies(cl, 2, nullptr, ConstraintSpec::exact_fairness()),
                    std::invalid_argument);
    CHECK(ConstraintSpec::exact_fairness().needs_colors());
    CHECK(ConstraintSpec::exact_balance().needs_colors());
    CHECK(!ConstraintSpec::lower_bound_of(1).needs_colors());
    CHECK(!ConstraintSpec::outliers_of(0).needs_colors());
    CHECK(!ConstraintSpec::unconstrained().needs_colors());
}

TEST_CASE("invalid clustering indices are rejected") {
    Clustering oob{{{0, 7}}};
    CHECK_THROWS_AS(satisfies(oob, 2, nullptr, ConstraintSpec::unconstrained()),
                    std::invalid_argument);
    Clustering dup{{{0, 1}, {1}}};
    CHECK_THROWS_AS(satisfies(dup, 2, nullptr, ConstraintSpec::outliers_of(2)),
                    std::invalid_argument);
}

} // TEST_SUITE
