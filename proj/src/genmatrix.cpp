#include "sdc/genmatrix.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdc/kernels.hpp"

namespace sdc {

GenMatrix::GenMatrix(std::vector<BitWord> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw InvariantError("matrix must have at least one row");
    n_ = rows_[0].length();
    for (const auto& r : rows_)
        if (r.length() != n_) throw InvariantError("rows of unequal length");
}

void GenMatrix::add_row(const BitWord& r) {
    if (n_ == 0) n_ = r.length();
    if (r.length() != n_) throw InvariantError("rows of unequal length");
    rows_.push_back(r);
}

GenMatrix GenMatrix::parse(std::istream& is) {
    std::vector<BitWord> rows;
    std::string line;
    while (std::getline(is, line)) {
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            if (rows.empty()) continue;  // leading blank lines
            break;
        }
        size_t e = line.find_last_not_of(" \t\r");
        std::string_view body(line.data() + b, e - b + 1);
        if (body.size() > static_cast<size_t>(kMaxLen)) throw ParseError("row longer than 128");
        BitWord w = BitWord::parse(body);
        if (!rows.empty() && w.length() != rows[0].length())
            throw ParseError("ragged matrix: rows of unequal length");
        rows.push_back(w);
    }
    if (rows.empty()) throw ParseError("no matrix rows found");
    return GenMatrix(std::move(rows));
}

GenMatrix GenMatrix::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return parse(f);
}

void GenMatrix::print(std::ostream& os) const {
    for (const auto& r : rows_) os << r.to_string() << '\n';
}

std::string GenMatrix::key() const {
    std::string s;
    s.reserve(rows_.size() * 17 + 2);
    s.push_back(static_cast<char>(n_));
    for (const auto& r : rows_) {
        for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((r.lo() >> (8 * b)) & 0xff));
        for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((r.hi() >> (8 * b)) & 0xff));
    }
    return s;
}

GenMatrix rref(const GenMatrix& m, int* rank) {
    std::vector<BitWord> rows = m.rows();
    int k = static_cast<int>(rows.size());
    int r = 0;
    for (int col = 0; col < m.n() && r < k; ++col) {
        int piv = -1;
        for (int i = r; i < k; ++i)
            if (rows[static_cast<size_t>(i)].get(col)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(piv)]);
        for (int i = 0; i < k; ++i)
            if (i != r && rows[static_cast<size_t>(i)].get(col))
                rows[static_cast<size_t>(i)] ^= rows[static_cast<size_t>(r)];
        ++r;
    }
    if (rank) *rank = r;
    rows.resize(static_cast<size_t>(r));
    if (rows.empty()) {
        GenMatrix empty(m.n());
        return empty;
    }
    return GenMatrix(std::move(rows));
}

BitWord rref_reduce(const GenMatrix& r, BitWord v) {
    for (const auto& row : r.rows()) {
        int p = row.lowest_set();
        if (p >= 0 && v.get(p)) v ^= row;
    }
    return v;
}

bool rref_contains(const GenMatrix& r, const BitWord& v) {
    return rref_reduce(r, v).is_zero();
}

GenMatrix dual(const GenMatrix& m) {
    int rank = 0;
    GenMatrix r = rref(m, &rank);
    if (rank != m.k()) throw InvariantError("dual: input rows are dependent");
    const int n = m.n();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    std::vector<int> pivots;
    pivots.reserve(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) {
        int p = r.row(i).lowest_set();
        pivots.push_back(p);
        is_pivot[static_cast<size_t>(p)] = true;
    }
    GenMatrix out(n);
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        BitWord v(n);
        v.set(f, true);
        for (int i = 0; i < rank; ++i)
            if (r.row(i).get(f)) v.set(pivots[static_cast<size_t>(i)], true);
        out.add_row(v);
    }
    return out;
}

namespace {

// Full 2^k histogram with the budget contract: k above max_dim needs an
// explicit time budget; the sweep is then chunked so the clock is checked.
std::vector<uint64_t> swept_histogram(const GenMatrix& red, const BitWord& offset,
                                      const SweepBudget& budget) {
    const int k = red.k();
    const int n = red.n();
    if (k > budget.max_dim && !budget.time_limit_s)
        throw BudgetExceededError("2^k sweep with k=" + std::to_string(k) +
                                  " refused; pass a time budget to opt in");
    if (k > 30) throw BudgetExceededError("2^k sweep with k > 30 not supported");

    std::vector<uint64_t> rows_lo(static_cast<size_t>(std::max(k, 1)));
    std::vector<uint64_t> rows_hi(static_cast<size_t>(std::max(k, 1)));
    for (int i = 0; i < k; ++i) {
        rows_lo[static_cast<size_t>(i)] = red.row(i).lo();
        rows_hi[static_cast<size_t>(i)] = red.row(i).hi();
    }
    std::vector<uint64_t> hist(static_cast<size_t>(n) + 1, 0);

    const int chunk_dim = std::min(k, 20);
    if (k == chunk_dim) {
        kernels::weight_histogram(rows_lo.data(), rows_hi.data(), k, offset.lo(), offset.hi(),
                                  hist.data());
        return hist;
    }
    // Chunked: outer Gray sweep over the high k-chunk_dim rows.
    const auto start = std::chrono::steady_clock::now();
    uint64_t off_lo = offset.lo(), off_hi = offset.hi();
    const uint64_t outer = uint64_t{1} << (k - chunk_dim);
    for (uint64_t g = 0;; ++g) {
        kernels::weight_histogram(rows_lo.data(), rows_hi.data(), chunk_dim, off_lo, off_hi,
                                  hist.data());
        if (g + 1 == outer) break;
        int j = std::countr_zero(g + 1) + chunk_dim;
        off_lo ^= rows_lo[static_cast<size_t>(j)];
        off_hi ^= rows_hi[static_cast<size_t>(j)];
        if (budget.time_limit_s) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
            if (el > *budget.time_limit_s)
                throw BudgetExceededError("sweep time budget exceeded");
        }
    }
    return hist;
}

}  // namespace

std::vector<uint64_t> coset_weight_histogram(const GenMatrix& m, const BitWord& offset,
                                             const SweepBudget& budget) {
    if (offset.length() != m.n()) throw ShapeMismatchError("offset length mismatch");
    return swept_histogram(rref(m), offset, budget);
}

WeightEnum weight_distribution(const GenMatrix& m, const SweepBudget& budget) {
    return WeightEnum::from_hist(swept_histogram(rref(m), BitWord(m.n()), budget));
}

int min_weight(const GenMatrix& m, const SweepBudget& budget) {
    auto hist = swept_histogram(rref(m), BitWord(m.n()), budget);
    for (size_t w = 1; w < hist.size(); ++w)
        if (hist[w]) return static_cast<int>(w);
    throw InvariantError("min_weight of the zero code");
}

}  // namespace sdc
