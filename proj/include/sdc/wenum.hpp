#ifndef SDC_WENUM_HPP
#define SDC_WENUM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sdc {

// Exact coefficient sequence A_0..A_n of a (shadow) weight enumerator.
class WeightEnum {
  public:
    WeightEnum() = default;
    explicit WeightEnum(int n) : a_(static_cast<size_t>(n) + 1) {}

    static WeightEnum from_hist(const std::vector<uint64_t>& hist);

    int n() const { return static_cast<int>(a_.size()) - 1; }
    const mpz_class& operator[](int w) const { return a_[static_cast<size_t>(w)]; }
    mpz_class& operator[](int w) { return a_[static_cast<size_t>(w)]; }

    mpz_class total() const;
    // Smallest w >= from with A_w != 0, or -1.
    int min_nonzero(int from = 1) const;
    int distinct_nonzero_weights() const;  // counts w >= 1 with A_w != 0

    bool operator==(const WeightEnum& o) const { return a_ == o.a_; }
    bool operator!=(const WeightEnum& o) const { return !(*this == o); }

    // "weight:count" per line, ascending weight, nonzero coefficients only.
    void write(std::ostream& os) const;
    static WeightEnum parse(std::istream& is, int n);
    // Same pairs joined by commas, for one-line reports.
    std::string to_pairs() const;

    uint64_t hash() const;

  private:
    std::vector<mpz_class> a_;
};

}  // namespace sdc

#endif
