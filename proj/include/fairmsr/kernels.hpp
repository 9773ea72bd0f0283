#pragma once

#include <cstddef>
#include <string>

// Low-level distance kernels. A scalar reference implementation always
// exists; on x86-64 an AVX2 variant is compiled in and picked at runtime.
// The environment variable FAIR_MSR_KERNEL=scalar|avx2 forces a backend.
namespace fairmsr::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b); // throws std::invalid_argument if unavailable
std::string backend_name(Backend b);

// |a - b|^2 over d coordinates.
double sqdist(const double* a, const double* b, std::size_t d);

// out[i] = |pts[i*d .. ] - q|^2 for i in [0, n).
void sqdist_batch(const double* pts, std::size_t n, std::size_t d,
                  const double* q, double* out);

// Index of the row of pts farthest from q (first index wins ties);
// the squared distance is stored in *max_sq. Requires n >= 1.
std::size_t farthest(const double* pts, std::size_t n, std::size_t d,
                     const double* q, double* max_sq);

namespace detail {
double sqdist_scalar(const double* a, const double* b, std::size_t d);
void sqdist_batch_scalar(const double* pts, std::size_t n, std::size_t d,
                         const double* q, double* out);
std::size_t farthest_scalar(const double* pts, std::size_t n, std::size_t d,
                            const double* q, double* max_sq);
#if defined(FAIRMSR_HAVE_AVX2)
double sqdist_avx2(const double* a, const double* b, std::size_t d);
void sqdist_batch_avx2(const double* pts, std::size_t n, std::size_t d,
                       const double* q, double* out);
std::size_t farthest_avx2(const double* pts, std::size_t n, std::size_t d,
                          const double* q, double* max_sq);
#endif
} // namespace detail

} // namespace fairmsr::kernels
