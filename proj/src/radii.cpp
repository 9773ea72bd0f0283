#include "fairmsr/radii.hpp"

#include "fairmsr/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairmsr {

std::size_t ceil_log1p(double x, double eps) {
    if (!(x > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("ceil_log1p: requires x > 0 and eps > 0");
    const double target = x * (1.0 - 1e-12);
    const double ratio = 1.0 + eps;
    std::size_t m = 0;
    double v = 1.0;
    while (v < target) {
        v *= ratio;
        ++m;
        if (m > 100'000'000)
            throw std::invalid_argument("ceil_log1p: range too large");
    }
    return m;
}

std::vector<double> geometric_grid(double a, double b, double eps) {
    if (!(a > 0.0) || !(b >= a) || !(eps > 0.0))
        throw std::invalid_argument("geometric_grid: requires 0 < a <= b, eps > 0");
    std::vector<double> values{a};
    double v = a;
    while (v < b) {
        v *= (1.0 + eps);
        values.push_back(v);
        if (values.size() > 100'000'000)
            throw std::invalid_argument("geometric_grid: range too large");
    }
    return values;
}

namespace {

std::vector<double> materialize(const GeometricGridSpec& spec) {
    std::vector<double> values;
    values.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) values.push_back(spec.value(i));
    return values;
}

} // namespace

GeometricGridSpec largest_radius_grid_spec(double r_alpha, double alpha,
                                           double beta, int k, double eps) {
    if (!(r_alpha > 0.0))
        throw std::invalid_argument("largest_radius_grid: r_alpha must be > 0");
    if (!(alpha >= 1.0) || !(beta >= 1.0) || k < 1 || !(eps > 0.0))
        throw std::invalid_argument("largest_radius_grid: bad parameters");
    GeometricGridSpec spec;
    spec.anchor = r_alpha / alpha;
    spec.ratio = 1.0 + eps;
    spec.count = 2 * ceil_log1p(alpha * beta * static_cast<double>(k), eps) + 1;
    return spec;
}

RadiusCandidates largest_radius_candidates_kcenter(double r_alpha, double alpha,
                                                   double beta, int k,
                                                   double eps) {
    RadiusCandidates out;
    out.values = materialize(largest_radius_grid_spec(r_alpha, alpha, beta, k, eps));
    out.source = RadiusSource::kcenter_grid;
    return out;
}

GeometricGridSpec remaining_radii_grid_spec(double r_max, int k, double eps) {
    if (!(r_max > 0.0))
        throw std::invalid_argument("remaining_radii: r_max must be > 0");
    if (k < 1 || !(eps > 0.0))
        throw std::invalid_argument("remaining_radii: bad parameters");
    GeometricGridSpec spec;
    spec.anchor = (eps / static_cast<double>(k)) * r_max;
    spec.ratio = 1.0 + eps;
    spec.count = ceil_log1p(static_cast<double>(k) / eps, eps) + 1;
    return spec;
}

std::vector<double> remaining_radii_candidates(double r_max, int k, double eps) {
    return materialize(remaining_radii_grid_spec(r_max, k, eps));
}

RadiusCandidates coreset_radius_candidates(const PointSet& pts, double eps,
                                           std::size_t budget) {
    if (pts.empty())
        throw std::invalid_argument("coreset_radius_candidates: empty point set");
    if (!(eps > 0.0))
        throw std::invalid_argument("coreset_radius_candidates: eps must be > 0");
    const std::size_t n = pts.size();
    const std::size_t s =
        static_cast<std::size_t>(std::ceil(1.0 / eps)) + 1;
    const std::size_t max_size = std::min(s, n);

    // Count subsets of size 1..max_size before enumerating anything.
    double total = 0.0;
    {
        double binom = 1.0;
        for (std::size_t i = 1; i <= max_size; ++i) {
            binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
            total += binom;
            if (total > static_cast<double>(budget))
                throw ResourceError(
                    "coreset candidate enumeration exceeds budget of " +
                    std::to_string(budget) + " subsets");
        }
    }

    std::vector<double> values;
    std::vector<std::size_t> subset;
    // Combinations in lexicographic order per size.
    for (std::size_t size = 1; size <= max_size; ++size) {
        subset.resize(size);
        for (std::size_t i = 0; i < size; ++i) subset[i] = i;
        while (true) {
            const Ball b = approx_meb(pts, subset, eps);
            values.push_back(b.radius);
            values.push_back((1.0 + eps) * b.radius);
            // Advance to the next combination.
            std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(size) - 1;
            while (pos >= 0 &&
                   subset[static_cast<std::size_t>(pos)] ==
                       n - size + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++subset[static_cast<std::size_t>(pos)];
            for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < size; ++j)
                subset[j] = subset[j - 1] + 1;
        }
    }

    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    RadiusCandidates out;
    out.values = std::move(values);
    out.source = RadiusSource::coreset;
    return out;
}

} // namespace fairmsr
