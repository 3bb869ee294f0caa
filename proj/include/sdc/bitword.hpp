#ifndef SDC_BITWORD_HPP
#define SDC_BITWORD_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdc/errors.hpp"

namespace sdc {

inline constexpr int kMaxLen = 128;

// Fixed-length vector over GF(2), 1 <= n <= 128.
// Coordinate 0 is the least-significant bit of word 0; this packing is part
// of the file-format contract and must not change.
class BitWord {
  public:
    BitWord() = default;
    explicit BitWord(int n) : n_(n) {
        if (n < 1 || n > kMaxLen) throw InvariantError("BitWord length out of range");
    }

    static BitWord parse(std::string_view s) {
        BitWord w(static_cast<int>(s.size()));
        for (int i = 0; i < w.n_; ++i) {
            char c = s[static_cast<size_t>(i)];
            if (c == '1')
                w.set(i, true);
            else if (c != '0')
                throw ParseError("matrix rows must consist of '0'/'1' characters");
        }
        return w;
    }

    int length() const { return n_; }

    bool get(int i) const { return (w_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u; }

    void set(int i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v)
            w_[static_cast<size_t>(i >> 6)] |= m;
        else
            w_[static_cast<size_t>(i >> 6)] &= ~m;
    }

    void flip(int i) { w_[static_cast<size_t>(i >> 6)] ^= uint64_t{1} << (i & 63); }

    int weight() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
    bool is_zero() const { return (w_[0] | w_[1]) == 0; }

    BitWord& operator^=(const BitWord& o) {
        w_[0] ^= o.w_[0];
        w_[1] ^= o.w_[1];
        return *this;
    }
    BitWord operator^(const BitWord& o) const {
        BitWord r = *this;
        return r ^= o;
    }
    BitWord operator&(const BitWord& o) const {
        BitWord r = *this;
        r.w_[0] &= o.w_[0];
        r.w_[1] &= o.w_[1];
        return r;
    }

    bool operator==(const BitWord& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitWord& o) const { return !(*this == o); }

    // x . y over GF(2)
    static int inner(const BitWord& a, const BitWord& b) {
        return (std::popcount(a.w_[0] & b.w_[0]) + std::popcount(a.w_[1] & b.w_[1])) & 1;
    }

    // Index of the lowest set coordinate, or -1.
    int lowest_set() const {
        if (w_[0]) return std::countr_zero(w_[0]);
        if (w_[1]) return 64 + std::countr_zero(w_[1]);
        return -1;
    }

    // Total order on coordinate strings read c0 c1 ... c_{n-1}, '0' < '1'.
    // Returns <0, 0, >0.
    static int lex_cmp(const BitWord& a, const BitWord& b) {
        for (int w = 0; w < 2; ++w) {
            uint64_t d = a.w_[static_cast<size_t>(w)] ^ b.w_[static_cast<size_t>(w)];
            if (d) {
                int i = std::countr_zero(d);
                return ((a.w_[static_cast<size_t>(w)] >> i) & 1) ? 1 : -1;
            }
        }
        return 0;
    }

    std::string to_string() const {
        std::string s(static_cast<size_t>(n_), '0');
        for (int i = 0; i < n_; ++i)
            if (get(i)) s[static_cast<size_t>(i)] = '1';
        return s;
    }

    // Two fresh coordinates inserted in front (positions 0 and 1).
    BitWord with_prefix2(bool b0, bool b1) const {
        if (n_ + 2 > kMaxLen) throw InvariantError("BitWord length out of range");
        BitWord r(n_ + 2);
        r.w_[0] = (w_[0] << 2) | (b0 ? 1u : 0u) | (b1 ? 2u : 0u);
        r.w_[1] = (w_[1] << 2) | (w_[0] >> 62);
        return r;
    }

    // Coordinate c removed, higher coordinates shifted down.
    BitWord without_coord(int c) const {
        unsigned __int128 v = pack();
        unsigned __int128 low = v & ((static_cast<unsigned __int128>(1) << c) - 1);
        unsigned __int128 high = (v >> (c + 1)) << c;
        BitWord r(n_ - 1);
        r.unpack(low | high);
        return r;
    }

    uint64_t lo() const { return w_[0]; }
    uint64_t hi() const { return w_[1]; }
    void set_words(uint64_t lo, uint64_t hi) {
        w_[0] = lo;
        w_[1] = hi;
        mask_tail();
    }

    uint64_t hash() const {
        uint64_t h = w_[0] * 0x9e3779b97f4a7c15ull;
        h ^= (w_[1] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
        return h ^ static_cast<uint64_t>(n_);
    }

  private:
    unsigned __int128 pack() const {
        return (static_cast<unsigned __int128>(w_[1]) << 64) | w_[0];
    }
    void unpack(unsigned __int128 v) {
        w_[0] = static_cast<uint64_t>(v);
        w_[1] = static_cast<uint64_t>(v >> 64);
        mask_tail();
    }
    void mask_tail() {
        if (n_ < 64)
            w_[0] &= (uint64_t{1} << n_) - 1, w_[1] = 0;
        else if (n_ < 128)
            w_[1] &= (n_ == 64) ? 0 : (uint64_t{1} << (n_ - 64)) - 1;
    }

    std::array<uint64_t, 2> w_{0, 0};
    int n_ = 0;
};

}  // namespace sdc

#endif
