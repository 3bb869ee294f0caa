#include "sdc/kernels.hpp"

#include <atomic>
#include <bit>

namespace sdc::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::auto_detect};

Backend resolve(Backend b) {
    if (b != Backend::auto_detect) return b;
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) b = Backend::scalar;
    g_backend.store(b);
}

Backend active_backend() { return resolve(g_backend.load()); }

const char* backend_name() {
    return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void weight_histogram_scalar(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                             uint64_t off_lo, uint64_t off_hi, uint64_t* hist) {
    uint64_t lo = off_lo, hi = off_hi;
    hist[std::popcount(lo) + std::popcount(hi)]++;
    const uint64_t total = uint64_t{1} << k;
    for (uint64_t g = 1; g < total; ++g) {
        int j = std::countr_zero(g);
        lo ^= rows_lo[j];
        hi ^= rows_hi[j];
        hist[std::popcount(lo) + std::popcount(hi)]++;
    }
}

void weight_histogram(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                      uint64_t off_lo, uint64_t off_hi, uint64_t* hist) {
    if (active_backend() == Backend::avx2 && k >= 6) {
        weight_histogram_avx2(rows_lo, rows_hi, k, off_lo, off_hi, hist);
        return;
    }
    weight_histogram_scalar(rows_lo, rows_hi, k, off_lo, off_hi, hist);
}

bool any_weight_below(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                      uint64_t off_lo, uint64_t off_hi, int limit, bool skip_empty) {
    uint64_t lo = off_lo, hi = off_hi;
    if (!skip_empty && std::popcount(lo) + std::popcount(hi) < limit) return true;
    const uint64_t total = uint64_t{1} << k;
    for (uint64_t g = 1; g < total; ++g) {
        int j = std::countr_zero(g);
        lo ^= rows_lo[j];
        hi ^= rows_hi[j];
        if (std::popcount(lo) + std::popcount(hi) < limit) return true;
    }
    return false;
}

#if !defined(__x86_64__)
void weight_histogram_avx2(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                           uint64_t off_lo, uint64_t off_hi, uint64_t* hist) {
    weight_histogram_scalar(rows_lo, rows_hi, k, off_lo, off_hi, hist);
}
#endif

}  // namespace sdc::kernels
