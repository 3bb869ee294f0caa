#ifndef SDC_KERNELS_HPP
#define SDC_KERNELS_HPP

#include <cstdint>

namespace sdc::kernels {

// Inner loops shared by every enumeration in the library: sweep all 2^k
// XOR-combinations of k packed rows (Gray-code order, one row XOR per step)
// and accumulate per-weight counts. A scalar reference implementation and an
// AVX2 variant are provided; the active one is chosen at runtime.

enum class Backend { auto_detect, scalar, avx2 };

void set_backend(Backend b);   // auto_detect re-probes the CPU
Backend active_backend();      // resolved backend (never auto_detect)
const char* backend_name();
bool avx2_supported();

// hist[w] += #(combinations c of rows, XOR offset, with weight(c) == w),
// for all 2^k combinations including the empty one (= offset itself).
// rows_lo/rows_hi hold the two 64-bit words of each row; hist must have
// space for n+1 entries and is not cleared.
void weight_histogram(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                      uint64_t off_lo, uint64_t off_hi, uint64_t* hist);

void weight_histogram_scalar(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                             uint64_t off_lo, uint64_t off_hi, uint64_t* hist);

void weight_histogram_avx2(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                           uint64_t off_lo, uint64_t off_hi, uint64_t* hist);

// True iff some combination other than the skipped one has weight < limit.
// skip_empty skips the empty combination (weight of the offset itself).
// Scalar with early exit; used to reject extension candidates fast.
bool any_weight_below(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                      uint64_t off_lo, uint64_t off_hi, int limit, bool skip_empty);

}  // namespace sdc::kernels

#endif
