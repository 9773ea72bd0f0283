#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fairmsr {

// Relative tolerance for ball membership and radius comparisons, and the
// absolute floor that keeps zero-radius balls testable.
inline constexpr double tol_geo = 1e-9;
inline constexpr double abs_floor = 1e-12;

// Dense row-major point storage; all points share one dimension.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}

    std::size_t size() const { return dim_ ? data_.size() / dim_ : 0; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return data_.empty(); }

    void push_back(std::span<const double> p); // throws on dimension mismatch

    std::span<const double> operator[](std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    const double* row(std::size_t i) const { return data_.data() + i * dim_; }
    const double* data() const { return data_.data(); }

private:
    std::vector<double> data_;
    std::size_t dim_ = 0;
};

struct Ball {
    std::vector<double> center;
    double radius = 0.0;
};

// Euclidean distance; throws std::invalid_argument on dimension mismatch.
double distance(std::span<const double> p, std::span<const double> q);

// True iff distance(center, p) <= radius * (1 + rel_tol) + abs_floor.
bool ball_contains(const Ball& b, std::span<const double> p,
                   double rel_tol = tol_geo);

// Minimum enclosing ball. Exact (Welzl move-to-front) for dim <= 10;
// larger dimensions fall back to an iterative scheme driven to 1e-7
// relative precision. The returned radius is the exact max distance from
// the computed center, so enclosure always holds. Throws on empty input.
Ball exact_meb(const PointSet& pts);
Ball exact_meb(const PointSet& pts, std::span<const std::size_t> subset);

// (1+eps)-approximate minimum enclosing ball: farthest-point iteration
// with ceil(1/eps^2) steps, radius set to the exact max distance from the
// returned center. Requires eps > 0 and a nonempty input.
Ball approx_meb(const PointSet& pts, double eps);
Ball approx_meb(const PointSet& pts, std::span<const std::size_t> subset,
                double eps);

namespace detail {
// Both MEB routines on a raw row-major buffer (n >= 1).
Ball exact_meb_buffer(const double* pts, std::size_t n, std::size_t d);
Ball approx_meb_buffer(const double* pts, std::size_t n, std::size_t d,
                       double eps);
} // namespace detail

} // namespace fairmsr
