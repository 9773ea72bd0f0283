#include "fairmsr/kcenter.hpp"

#include "fairmsr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fairmsr {

KCenterResult gonzalez(const PointSet& pts, int k) {
    if (k < 1) throw std::invalid_argument("gonzalez: k must be >= 1");
    if (pts.empty()) throw std::invalid_argument("gonzalez: empty point set");
    const std::size_t n = pts.size();
    const std::size_t d = pts.dim();
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(k), n);

    KCenterResult res;
    res.alpha = 2.0;
    res.centers.push_back(0);
    std::vector<double> min_sq(n);
    kernels::sqdist_batch(pts.data(), n, d, pts.row(0), min_sq.data());

    while (res.centers.size() < want) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (min_sq[i] > min_sq[far]) far = i;
        res.centers.push_back(far);
        std::vector<double> sq(n);
        kernels::sqdist_batch(pts.data(), n, d, pts.row(far), sq.data());
        for (std::size_t i = 0; i < n; ++i) min_sq[i] = std::min(min_sq[i], sq[i]);
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, min_sq[i]);
    res.value = std::sqrt(worst);
    return res;
}

namespace {

std::mutex g_registry_mutex;
std::map<ConstraintKind, ConstrainedKCenterFn>& registry() {
    static std::map<ConstraintKind, ConstrainedKCenterFn> r;
    return r;
}

} // namespace

void register_constrained_kcenter(ConstraintKind kind, ConstrainedKCenterFn fn) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    registry()[kind] = std::move(fn);
}

void unregister_constrained_kcenter(ConstraintKind kind) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    registry().erase(kind);
}

std::optional<KCenterResult> constrained_kcenter(const PointSet& pts, int k,
                                                 const ColorTable* colors,
                                                 const ConstraintSpec& spec) {
    if (spec.kind == ConstraintKind::Unconstrained) return gonzalez(pts, k);
    ConstrainedKCenterFn fn;
    {
        std::lock_guard<std::mutex> lock(g_registry_mutex);
        auto it = registry().find(spec.kind);
        if (it == registry().end()) return std::nullopt;
        fn = it->second;
    }
    return fn(pts, k, colors, spec);
}

} // namespace fairmsr
