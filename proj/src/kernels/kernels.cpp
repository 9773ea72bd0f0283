#include "fairmsr/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace fairmsr::kernels {

namespace detail {

double sqdist_scalar(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

void sqdist_batch_scalar(const double* pts, std::size_t n, std::size_t d,
                         const double* q, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = sqdist_scalar(pts + i * d, q, d);
}

std::size_t farthest_scalar(const double* pts, std::size_t n, std::size_t d,
                            const double* q, double* max_sq) {
    std::size_t best = 0;
    double best_sq = sqdist_scalar(pts, q, d);
    for (std::size_t i = 1; i < n; ++i) {
        const double sq = sqdist_scalar(pts + i * d, q, d);
        if (sq > best_sq) {
            best_sq = sq;
            best = i;
        }
    }
    if (max_sq) *max_sq = best_sq;
    return best;
}

} // namespace detail

namespace {

struct Vtable {
    double (*sqdist)(const double*, const double*, std::size_t);
    void (*sqdist_batch)(const double*, std::size_t, std::size_t,
                         const double*, double*);
    std::size_t (*farthest)(const double*, std::size_t, std::size_t,
                            const double*, double*);
};

constexpr Vtable kScalar{detail::sqdist_scalar, detail::sqdist_batch_scalar,
                         detail::farthest_scalar};
#if defined(FAIRMSR_HAVE_AVX2)
constexpr Vtable kAvx2{detail::sqdist_avx2, detail::sqdist_batch_avx2,
                       detail::farthest_avx2};
#endif

bool avx2_usable() {
#if defined(FAIRMSR_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const Vtable*> g_vtable{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const Vtable* table_for(Backend b) {
#if defined(FAIRMSR_HAVE_AVX2)
    if (b == Backend::avx2) return &kAvx2;
#endif
    (void)b;
    return &kScalar;
}

Backend pick_default() {
    if (const char* env = std::getenv("FAIR_MSR_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_usable()) return Backend::avx2;
    }
    return avx2_usable() ? Backend::avx2 : Backend::scalar;
}

const Vtable* vtable() {
    const Vtable* t = g_vtable.load(std::memory_order_acquire);
    if (!t) {
        const Backend b = pick_default();
        g_backend.store(b, std::memory_order_relaxed);
        t = table_for(b);
        g_vtable.store(t, std::memory_order_release);
    }
    return t;
}

} // namespace

Backend active_backend() {
    vtable();
    return g_backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) {
    return b == Backend::scalar || (b == Backend::avx2 && avx2_usable());
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument("kernel backend not available: " +
                                    backend_name(b));
    g_backend.store(b, std::memory_order_relaxed);
    g_vtable.store(table_for(b), std::memory_order_release);
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

double sqdist(const double* a, const double* b, std::size_t d) {
    return vtable()->sqdist(a, b, d);
}

void sqdist_batch(const double* pts, std::size_t n, std::size_t d,
                  const double* q, double* out) {
    vtable()->sqdist_batch(pts, n, d, q, out);
}

std::size_t farthest(const double* pts, std::size_t n, std::size_t d,
                     const double* q, double* max_sq) {
    return vtable()->farthest(pts, n, d, q, max_sq);
}

} // namespace fairmsr::kernels
