#include "fairmsr/geometry.hpp"

#include "fairmsr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace fairmsr {

void PointSet::push_back(std::span<const double> p) {
    if (dim_ == 0 && data_.empty()) dim_ = p.size();
    if (p.size() != dim_)
        throw std::invalid_argument("point dimension mismatch");
    if (dim_ == 0) throw std::invalid_argument("zero-dimensional point");
    data_.insert(data_.end(), p.begin(), p.end());
}

double distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("distance: dimension mismatch");
    return std::sqrt(kernels::sqdist(p.data(), q.data(), p.size()));
}

bool ball_contains(const Ball& b, std::span<const double> p, double rel_tol) {
    if (b.center.size() != p.size())
        throw std::invalid_argument("ball_contains: dimension mismatch");
    const double dist =
        std::sqrt(kernels::sqdist(b.center.data(), p.data(), p.size()));
    return dist <= b.radius * (1.0 + rel_tol) + abs_floor;
}

namespace {

// Ball circumscribing the current support set. Solves the (m-1)x(m-1)
// system fixing equal distances to all support points; near-singular
// pivots are skipped, which parks the dependent coordinate at zero.
struct SupportBall {
    std::vector<double> center;
    double r2 = -1.0; // negative marks the empty ball
};

SupportBall ball_of_support(const std::vector<const double*>& sup,
                            std::size_t d) {
    SupportBall b;
    b.center.assign(d, 0.0);
    const std::size_t m = sup.size();
    if (m == 0) return b;
    if (m == 1) {
        std::copy(sup[0], sup[0] + d, b.center.begin());
        b.r2 = 0.0;
        return b;
    }
    const std::size_t mm = m - 1;
    std::vector<double> v(mm * d);
    for (std::size_t i = 0; i < mm; ++i)
        for (std::size_t j = 0; j < d; ++j)
            v[i * d + j] = sup[i + 1][j] - sup[0][j];

    std::vector<double> a(mm * mm);
    std::vector<double> rhs(mm);
    double scale = 0.0;
    for (std::size_t i = 0; i < mm; ++i) {
        for (std::size_t j = 0; j < mm; ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < d; ++t) dot += v[i * d + t] * v[j * d + t];
            a[i * mm + j] = 2.0 * dot;
            scale = std::max(scale, std::abs(a[i * mm + j]));
        }
        rhs[i] = a[i * mm + i] / 2.0;
    }

    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> perm(mm);
    for (std::size_t i = 0; i < mm; ++i) perm[i] = i;
    for (std::size_t col = 0; col < mm; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < mm; ++r)
            if (std::abs(a[perm[r] * mm + col]) >
                std::abs(a[perm[piv] * mm + col]))
                piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = a[perm[col] * mm + col];
        if (std::abs(p) <= scale * 1e-13) {
            a[perm[col] * mm + col] = 0.0;
            continue;
        }
        for (std::size_t r = col + 1; r < mm; ++r) {
            const double f = a[perm[r] * mm + col] / p;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < mm; ++c)
                a[perm[r] * mm + c] -= f * a[perm[col] * mm + c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    std::vector<double> lambda(mm, 0.0);
    for (std::size_t col = mm; col-- > 0;) {
        const double p = a[perm[col] * mm + col];
        if (p == 0.0) {
            lambda[col] = 0.0;
            continue;
        }
        double s = rhs[perm[col]];
        for (std::size_t c = col + 1; c < mm; ++c)
            s -= a[perm[col] * mm + c] * lambda[c];
        lambda[col] = s / p;
    }

    std::copy(sup[0], sup[0] + d, b.center.begin());
    for (std::size_t i = 0; i < mm; ++i)
        for (std::size_t j = 0; j < d; ++j)
            b.center[j] += lambda[i] * v[i * d + j];
    b.r2 = kernels::sqdist(b.center.data(), sup[0], d);
    return b;
}

inline bool sb_contains(const SupportBall& b, const double* p, std::size_t d) {
    if (b.r2 < 0.0) return false;
    const double dsq = kernels::sqdist(b.center.data(), p, d);
    return dsq <= b.r2 * (1.0 + 1e-13) + 1e-30;
}

class Welzl {
public:
    Welzl(const double* pts, std::size_t n, std::size_t d)
        : pts_(pts), n_(n), d_(d), order_(n) {
        for (std::size_t i = 0; i < n; ++i) order_[i] = i;
    }

    SupportBall run() { return mtf(n_); }

private:
    SupportBall mtf(std::size_t count) {
        SupportBall b = ball_of_support(support_, d_);
        if (support_.size() == d_ + 1) return b;
        for (std::size_t i = 0; i < count; ++i) {
            const double* p = pts_ + order_[i] * d_;
            if (!sb_contains(b, p, d_)) {
                support_.push_back(p);
                b = mtf(i);
                support_.pop_back();
                const std::size_t idx = order_[i];
                order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(i));
                order_.insert(order_.begin(), idx);
            }
        }
        return b;
    }

    const double* pts_;
    std::size_t n_, d_;
    std::vector<std::size_t> order_;
    std::vector<const double*> support_;
};

// For d > 10: farthest-point iteration, stopped once the center barely
// moves (relative 1e-7). Near-exact, documented as such in the header.
std::vector<double> iterative_center(const double* pts, std::size_t n,
                                     std::size_t d) {
    std::vector<double> c(pts, pts + d);
    double max_sq = 0.0;
    for (std::size_t i = 1; i <= 200000; ++i) {
        const std::size_t f = kernels::farthest(pts, n, d, c.data(), &max_sq);
        if (max_sq == 0.0) break;
        const double step = 1.0 / static_cast<double>(i + 1);
        double move_sq = 0.0;
        const double* fp = pts + f * d;
        for (std::size_t j = 0; j < d; ++j) {
            const double delta = step * (fp[j] - c[j]);
            c[j] += delta;
            move_sq += delta * delta;
        }
        if (move_sq <= max_sq * 1e-14) break;
    }
    return c;
}

Ball finish(const double* pts, std::size_t n, std::size_t d,
            std::vector<double> center) {
    double max_sq = 0.0;
    kernels::farthest(pts, n, d, center.data(), &max_sq);
    return Ball{std::move(center), std::sqrt(max_sq)};
}

std::vector<double> gather(const PointSet& ps,
                           std::span<const std::size_t> subset) {
    const std::size_t d = ps.dim();
    std::vector<double> buf(subset.size() * d);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] >= ps.size())
            throw std::invalid_argument("subset index out of range");
        std::memcpy(buf.data() + i * d, ps.row(subset[i]), d * sizeof(double));
    }
    return buf;
}

} // namespace

namespace detail {

Ball exact_meb_buffer(const double* pts, std::size_t n, std::size_t d) {
    if (n == 0) throw std::invalid_argument("exact_meb: empty input");
    if (d <= 10) {
        Welzl w(pts, n, d);
        SupportBall sb = w.run();
        return finish(pts, n, d, std::move(sb.center));
    }
    return finish(pts, n, d, iterative_center(pts, n, d));
}

Ball approx_meb_buffer(const double* pts, std::size_t n, std::size_t d,
                       double eps) {
    if (n == 0) throw std::invalid_argument("approx_meb: empty input");
    if (!(eps > 0.0)) throw std::invalid_argument("approx_meb: eps must be > 0");
    const double raw = std::ceil(1.0 / (eps * eps));
    const std::size_t iters =
        raw > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(raw);
    // When the iteration budget dwarfs the input, the exact ball is cheaper
    // and trivially satisfies the (1+eps) contract.
    if (d <= 10 && iters > 50 * n) return exact_meb_buffer(pts, n, d);

    std::vector<double> c(pts, pts + d);
    double max_sq = 0.0;
    for (std::size_t i = 1; i <= iters; ++i) {
        const std::size_t f = kernels::farthest(pts, n, d, c.data(), &max_sq);
        if (max_sq == 0.0) break;
        const double step = 1.0 / static_cast<double>(i + 1);
        const double* fp = pts + f * d;
        for (std::size_t j = 0; j < d; ++j) c[j] += step * (fp[j] - c[j]);
    }
    return finish(pts, n, d, std::move(c));
}

} // namespace detail

Ball exact_meb(const PointSet& pts) {
    return detail::exact_meb_buffer(pts.data(), pts.size(), pts.dim());
}

Ball exact_meb(const PointSet& pts, std::span<const std::size_t> subset) {
    const std::vector<double> buf = gather(pts, subset);
    return detail::exact_meb_buffer(buf.data(), subset.size(), pts.dim());
}

Ball approx_meb(const PointSet& pts, double eps) {
    return detail::approx_meb_buffer(pts.data(), pts.size(), pts.dim(), eps);
}

Ball approx_meb(const PointSet& pts, std::span<const std::size_t> subset,
                double eps) {
    const std::vector<double> buf = gather(pts, subset);
    return detail::approx_meb_buffer(buf.data(), subset.size(), pts.dim(), eps);
}

} // namespace fairmsr
