#include "fairmsr/kcenter.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace fairmsr;
using testutil::make_points;

namespace {

// Exact k-center value with centers restricted to input points.
double brute_kcenter(const PointSet& pts, int k) {
    std::size_t n = pts.size();
    double best = 1e300;
    // Enumerate k-subsets.
    std::vector<std::size_t> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        double worst = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            double nearest = 1e300;
            for (int c = 0; c < k; ++c)
                nearest = std::min(nearest, distance(pts[p], pts[idx[c]]));
            worst = std::max(worst, nearest);
        }
        best = std::min(best, worst);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

} // namespace

TEST_SUITE("kcenter") {

TEST_CASE("gonzalez fixed traces") {
    auto single = gonzalez(make_points({{0, 0}}), 1);
    CHECK(single.value == 0.0);
    CHECK(single.alpha == 2.0);
    CHECK(single.centers == std::vector<std::size_t>{0});

    PointSet square = make_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto sq = gonzalez(square, 2);
    CHECK(sq.value == doctest::Approx(1.0));
    CHECK(sq.centers == std::vector<std::size_t>{0, 3});

    PointSet pairs = make_points({{0, 0}, {1, 0}, {100, 0}, {101, 0}});
    auto pr = gonzalez(pairs, 2);
    CHECK(pr.value == doctest::Approx(1.0));
    CHECK(pr.centers[0] == 0);
}

TEST_CASE("every point lies within value of a center") {
    std::mt19937_64 g(47);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + g() % 40;
        int k = 1 + static_cast<int>(g() % 4);
        PointSet pts = testutil::random_points(g, n, 2);
        auto res = gonzalez(pts, k);
        for (std::size_t p = 0; p < n; ++p) {
            double nearest = 1e300;
            for (auto c : res.centers)
                nearest = std::min(nearest, distance(pts[p], pts[c]));
            CHECK(nearest <= res.value + 1e-9);
        }
    }
}

TEST_CASE("2-approximation against brute force") {
    std::mt19937_64 g(53);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 3 + g() % 8; // n <= 10
        int k = 1 + static_cast<int>(g() % 3);
        if (static_cast<std::size_t>(k) > n) k = static_cast<int>(n);
        PointSet pts = testutil::random_points(g, n, 2);
        auto res = gonzalez(pts, k);
        double exact = brute_kcenter(pts, k);
        CHECK(res.value <= 2.0 * exact + 1e-9);
        CHECK(res.value >= exact - 1e-9);
    }
}

TEST_CASE("plugin registry dispatch") {
    PointSet pts = make_points({{0, 0}, {1, 0}});
    auto un = constrained_kcenter(pts, 1, nullptr,
                                  ConstraintSpec::unconstrained());
    REQUIRE(un.has_value());
    CHECK(un->value == gonzalez(pts, 1).value);

    auto fair = constrained_kcenter(pts, 1, nullptr,
                                    ConstraintSpec::exact_fairness());
    CHECK(!fair.has_value());
    auto lb = constrained_kcenter(pts, 1, nullptr,
                                  ConstraintSpec::lower_bound_of(1));
    CHECK(!lb.has_value());

    register_constrained_kcenter(
        ConstraintKind::LowerBound,
        [](const PointSet& p, int k, const ColorTable*,
           const ConstraintSpec&) -> std::optional<KCenterResult> {
            KCenterResult r = gonzalez(p, k);
            r.alpha = 3.0;
            return r;
        });
    auto plugged = constrained_kcenter(pts, 1, nullptr,
                                       ConstraintSpec::lower_bound_of(1));
    REQUIRE(plugged.has_value());
    CHECK(plugged->alpha == 3.0);
    unregister_constrained_kcenter(ConstraintKind::LowerBound);
    CHECK(!constrained_kcenter(pts, 1, nullptr,
                               ConstraintSpec::lower_bound_of(1))
               .has_value());
}

} // TEST_SUITE
