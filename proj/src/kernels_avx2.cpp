// AVX2 variant of the weight-histogram sweep. The top two generator rows are
// folded into four lane offsets so all lanes share one Gray sequence over the
// remaining k-2 rows; each step is one 256-bit XOR (two for n > 64) plus a
// shuffle-based per-lane popcount.
#if defined(__x86_64__)

#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "sdc/kernels.hpp"

namespace sdc::kernels {

namespace {

// Per-64-bit-lane popcount of a 256-bit register (nibble table + psadbw).
inline __m256i popcnt_per64(__m256i x) {
    const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                           0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_shuffle_epi8(table, _mm256_and_si256(x, low_mask));
    __m256i hi = _mm256_shuffle_epi8(
        table, _mm256_and_si256(_mm256_srli_epi16(x, 4), low_mask));
    return _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256());
}

}  // namespace

void weight_histogram_avx2(const uint64_t* rows_lo, const uint64_t* rows_hi, int k,
                           uint64_t off_lo, uint64_t off_hi, uint64_t* hist) {
    if (k < 2) {
        weight_histogram_scalar(rows_lo, rows_hi, k, off_lo, off_hi, hist);
        return;
    }
    const int kk = k - 2;
    const uint64_t ra_lo = rows_lo[kk], ra_hi = rows_hi[kk];
    const uint64_t rb_lo = rows_lo[kk + 1], rb_hi = rows_hi[kk + 1];

    __m256i acc_lo = _mm256_setr_epi64x(
        static_cast<long long>(off_lo), static_cast<long long>(off_lo ^ ra_lo),
        static_cast<long long>(off_lo ^ rb_lo), static_cast<long long>(off_lo ^ ra_lo ^ rb_lo));
    __m256i acc_hi = _mm256_setr_epi64x(
        static_cast<long long>(off_hi), static_cast<long long>(off_hi ^ ra_hi),
        static_cast<long long>(off_hi ^ rb_hi), static_cast<long long>(off_hi ^ ra_hi ^ rb_hi));

    bool has_hi = (off_hi | ra_hi | rb_hi) != 0;
    for (int j = 0; j < kk; ++j) has_hi = has_hi || rows_hi[j] != 0;

    alignas(32) uint64_t w[4];
    const uint64_t total = uint64_t{1} << kk;
    if (!has_hi) {
        _mm256_store_si256(reinterpret_cast<__m256i*>(w), popcnt_per64(acc_lo));
        hist[w[0]]++, hist[w[1]]++, hist[w[2]]++, hist[w[3]]++;
        for (uint64_t g = 1; g < total; ++g) {
            int j = std::countr_zero(g);
            acc_lo = _mm256_xor_si256(acc_lo, _mm256_set1_epi64x(static_cast<long long>(rows_lo[j])));
            _mm256_store_si256(reinterpret_cast<__m256i*>(w), popcnt_per64(acc_lo));
            hist[w[0]]++, hist[w[1]]++, hist[w[2]]++, hist[w[3]]++;
        }
        return;
    }
    alignas(32) uint64_t w2[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(w), popcnt_per64(acc_lo));
    _mm256_store_si256(reinterpret_cast<__m256i*>(w2), popcnt_per64(acc_hi));
    for (int i = 0; i < 4; ++i) hist[w[i] + w2[i]]++;
    for (uint64_t g = 1; g < total; ++g) {
        int j = std::countr_zero(g);
        acc_lo = _mm256_xor_si256(acc_lo, _mm256_set1_epi64x(static_cast<long long>(rows_lo[j])));
        acc_hi = _mm256_xor_si256(acc_hi, _mm256_set1_epi64x(static_cast<long long>(rows_hi[j])));
        _mm256_store_si256(reinterpret_cast<__m256i*>(w), popcnt_per64(acc_lo));
        _mm256_store_si256(reinterpret_cast<__m256i*>(w2), popcnt_per64(acc_hi));
        for (int i = 0; i < 4; ++i) hist[w[i] + w2[i]]++;
    }
}

}  // namespace sdc::kernels

#endif  // __x86_64__
