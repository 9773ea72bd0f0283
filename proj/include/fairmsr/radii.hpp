#pragma once

#include "fairmsr/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace fairmsr {

// Where a set of largest-radius candidates came from.
enum class RadiusSource { kcenter_grid, coreset };

struct RadiusCandidates {
    std::vector<double> values; // ascending
    RadiusSource source = RadiusSource::kcenter_grid;
};

// A geometric grid anchor * ratio^i for i in [0, count), kept symbolic;
// theoretical-mode grids can hold tens of thousands of values.
struct GeometricGridSpec {
    double anchor = 0.0;
    double ratio = 1.0;
    std::size_t count = 0;

    double value(std::size_t i) const {
        return anchor * std::pow(ratio, static_cast<double>(i));
    }
};

// Smallest m >= 0 with (1+eps)^m >= x, guarded against float boundary
// undershoot. Requires x > 0, eps > 0.
std::size_t ceil_log1p(double x, double eps);

// {a, a(1+eps), ...} until b is reached. Requires 0 < a <= b, eps > 0.
// Every r in [a, b] has a grid value within [r, (1+eps)r].
std::vector<double> geometric_grid(double a, double b, double eps);

// Candidate largest radii derived from a k-center value r_alpha obtained
// by an alpha-approximation, targeting beta-approximate clusterings:
// (r_alpha/alpha) * (1+eps)^i for i in 0..2*ceil(log_{1+eps}(alpha*beta*k)).
GeometricGridSpec largest_radius_grid_spec(double r_alpha, double alpha,
                                           double beta, int k, double eps);
RadiusCandidates largest_radius_candidates_kcenter(double r_alpha, double alpha,
                                                   double beta, int k,
                                                   double eps);

// Grid for the k-1 non-largest radii: (eps/k) * r_max * (1+eps)^i for
// i in 0..ceil(log_{1+eps}(k/eps)). Requires r_max > 0, k >= 1, eps > 0.
GeometricGridSpec remaining_radii_grid_spec(double r_max, int k, double eps);
std::vector<double> remaining_radii_candidates(double r_max, int k, double eps);

// Largest-radius candidates without a k-center routine: approximate MEB
// radii of every subset of size <= ceil(1/eps)+1, each emitted as r and
// (1+eps)r, deduplicated ascending. Throws ResourceError when the subset
// count exceeds the budget.
RadiusCandidates coreset_radius_candidates(const PointSet& pts, double eps,
                                           std::size_t budget = 10'000'000);

} // namespace fairmsr
