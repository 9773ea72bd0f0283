#pragma once

#include "fairmsr/constraints.hpp"
#include "fairmsr/geometry.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace testutil {

inline fairmsr::PointSet
make_points(std::initializer_list<std::initializer_list<double>> rows) {
    fairmsr::PointSet pts(rows.size() ? rows.begin()->size() : 0);
    for (const auto& r : rows) pts.push_back(std::vector<double>(r));
    return pts;
}

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double a, double b) {
    return a + (b - a) * uniform01(g);
}

inline fairmsr::PointSet random_points(std::mt19937_64& g, std::size_t n,
                                       std::size_t d, double lo = 0.0,
                                       double hi = 1.0) {
    fairmsr::PointSet pts(d);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) p[c] = uniform(g, lo, hi);
        pts.push_back(p);
    }
    return pts;
}

template <typename T>
void shuffle(std::mt19937_64& g, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(uniform01(g) * static_cast<double>(i));
        if (j >= i) j = i - 1;
        std::swap(v[i - 1], v[j]);
    }
}

// Two colors, alternating by index.
inline fairmsr::ColorTable alternating_colors(std::size_t n) {
    fairmsr::ColorTable t;
    t.labels = {"red", "blue"};
    t.color_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.color_of[i] = static_cast<int>(i % 2);
    return t;
}

} // namespace testutil
