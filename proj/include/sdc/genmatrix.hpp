#ifndef SDC_GENMATRIX_HPP
#define SDC_GENMATRIX_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "sdc/bitword.hpp"
#include "sdc/wenum.hpp"

namespace sdc {

// k x n matrix over GF(2), rows packed as BitWords of common length n.
class GenMatrix {
  public:
    GenMatrix() = default;
    explicit GenMatrix(int n) : n_(n) {}
    GenMatrix(std::vector<BitWord> rows);

    int n() const { return n_; }
    int k() const { return static_cast<int>(rows_.size()); }
    const BitWord& row(int i) const { return rows_[static_cast<size_t>(i)]; }
    const std::vector<BitWord>& rows() const { return rows_; }
    void add_row(const BitWord& r);

    bool operator==(const GenMatrix& o) const { return n_ == o.n_ && rows_ == o.rows_; }

    // Matrix text format: one row per line, '0'/'1', no separators; blank
    // line or end of stream terminates; surrounding whitespace ignored;
    // ragged rows rejected.
    static GenMatrix parse(std::istream& is);
    static GenMatrix parse_file(const std::string& path);
    void print(std::ostream& os) const;

    // Byte string identifying (rows, n) exactly; used as a hash/equality key.
    std::string key() const;

  private:
    std::vector<BitWord> rows_;
    int n_ = 0;
};

// Reduced row echelon form: unique basis of the row space, pivot columns
// ascending, zero rows dropped. rank receives k of the result.
GenMatrix rref(const GenMatrix& m, int* rank = nullptr);

// Membership of v in the row space of an rref() result.
bool rref_contains(const GenMatrix& r, const BitWord& v);
// v reduced modulo the row space of an rref() result.
BitWord rref_reduce(const GenMatrix& r, BitWord v);

// Basis of the dual code C^perp, (n-k) x n. Input must have full rank.
GenMatrix dual(const GenMatrix& m);

struct SweepBudget {
    int max_dim = 24;                      // refuse 2^k sweeps beyond this
    std::optional<double> time_limit_s{};  // opt-in budget for larger k
};

// Exact minimum nonzero codeword weight.
int min_weight(const GenMatrix& m, const SweepBudget& budget = {});

// Exact A_0..A_n over the row space (Gray-code sweep).
WeightEnum weight_distribution(const GenMatrix& m, const SweepBudget& budget = {});

// Histogram of weight(offset + c) over all codewords c; the shadow and coset
// sweeps reuse this with a nonzero offset.
std::vector<uint64_t> coset_weight_histogram(const GenMatrix& m, const BitWord& offset,
                                             const SweepBudget& budget = {});

}  // namespace sdc

#endif
