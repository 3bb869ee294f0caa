#include "sdc/selfdual.hpp"

#include <algorithm>

namespace sdc {

namespace {

// (weight/2) mod 2 is linear on a self-orthogonal code; value per basis row.
int half_weight_parity(const BitWord& r) { return (r.weight() % 4) / 2; }

// Basis of the doubly-even subcode C0 plus one singly-even row (the kernel
// construction: XOR a fixed singly-even row into every other singly-even row).
// Returns false for Type II input.
bool c0_basis(const GenMatrix& gen, GenMatrix& c0_out, BitWord& singly_out) {
    int p = -1;
    for (int i = 0; i < gen.k(); ++i)
        if (half_weight_parity(gen.row(i))) {
            p = i;
            break;
        }
    if (p < 0) return false;
    GenMatrix c0(gen.n());
    for (int i = 0; i < gen.k(); ++i) {
        if (i == p) continue;
        BitWord r = gen.row(i);
        if (half_weight_parity(r)) r ^= gen.row(p);
        c0.add_row(r);
    }
    c0_out = rref(c0);
    singly_out = gen.row(p);
    return true;
}

// Some vector of C0^perp \ C (a shadow representative, not necessarily
// minimal in any order).
BitWord shadow_rep(const GenMatrix& c0, const GenMatrix& code_rref) {
    GenMatrix c0perp = dual(c0);
    for (const auto& v : c0perp.rows())
        if (!rref_contains(code_rref, v)) return v;
    throw InvariantError("shadow representative not found");
}

// Lexicographically least vector of the coset offset + rowspace(m) subject to
// pred; sweeps all 2^k coset members.
template <typename Pred>
std::optional<BitWord> lex_min_in_coset(const GenMatrix& m, const BitWord& offset, Pred pred) {
    std::optional<BitWord> best;
    BitWord acc = offset;
    if (pred(acc)) best = acc;
    const uint64_t total = uint64_t{1} << m.k();
    for (uint64_t g = 1; g < total; ++g) {
        acc ^= m.row(std::countr_zero(g));
        if (pred(acc) && (!best || BitWord::lex_cmp(acc, *best) < 0)) best = acc;
    }
    return best;
}

}  // namespace

SelfDualCode SelfDualCode::validate(const GenMatrix& m, const SweepBudget& budget) {
    if (m.n() % 2 != 0) throw WrongDimensionError("length must be even");
    if (m.k() != m.n() / 2)
        throw WrongDimensionError("self-dual code needs exactly n/2 generator rows");
    int rank = 0;
    GenMatrix red = rref(m, &rank);
    if (rank != m.k()) throw WrongDimensionError("generator rows are dependent");
    for (int i = 0; i < red.k(); ++i)
        for (int j = i; j < red.k(); ++j)
            if (BitWord::inner(red.row(i), red.row(j)) != 0)
                throw NotSelfDualError("rows " + std::to_string(i) + "," + std::to_string(j) +
                                       " are not orthogonal");

    SelfDualCode c;
    c.gen_ = red;
    c.wenum_ = weight_distribution(red, budget);
    c.d_ = c.wenum_.min_nonzero();
    bool doubly = true;
    for (int w = 1; w <= c.n(); ++w)
        if (c.wenum_[w] != 0 && w % 4 != 0) {
            doubly = false;
            break;
        }
    c.type_ = doubly ? CodeType::type_ii : CodeType::type_i;
    if (doubly && c.n() % 8 != 0)
        throw NotSelfDualError("doubly-even weights at a length not divisible by 8");
    if (!doubly) {
        GenMatrix c0;
        BitWord singly;
        c0_basis(red, c0, singly);
        BitWord y0 = shadow_rep(c0, red);
        auto hist = coset_weight_histogram(red, y0, budget);
        for (size_t w = 0; w < hist.size(); ++w)
            if (hist[w]) {
                c.s_ = static_cast<int>(w);
                break;
            }
    }
    return c;
}

ShadowDecomp doubly_even_subcode(const SelfDualCode& c, const SweepBudget& budget) {
    if (c.is_type_ii())
        throw TypeIIInputError("Type II code has no shadow decomposition; S = C by convention");
    return shadow_or_code(c, budget);
}

ShadowDecomp shadow_or_code(const SelfDualCode& c, const SweepBudget& budget) {
    ShadowDecomp sd;
    if (c.is_type_ii()) {
        sd.shadow_is_code = true;
        sd.shadow_wenum = c.wenum();
        return sd;
    }
    GenMatrix c0;
    BitWord singly;
    c0_basis(c.gen(), c0, singly);
    sd.c0 = c0;
    // x: lex-least singly-even codeword; sweep over C.
    auto x = lex_min_in_coset(c.gen(), BitWord(c.n()),
                              [](const BitWord& v) { return v.weight() % 4 == 2; });
    sd.x = *x;
    // y: lex-least vector of S = y0 + C.
    BitWord y0 = shadow_rep(c0, c.gen());
    auto y = lex_min_in_coset(c.gen(), y0, [](const BitWord&) { return true; });
    sd.y = *y;
    sd.xy = sd.x ^ sd.y;
    sd.shadow_wenum = shadow_weight_distribution(sd, budget);
    return sd;
}

WeightEnum shadow_weight_distribution(const ShadowDecomp& sd, const SweepBudget& budget) {
    if (sd.shadow_is_code) return sd.shadow_wenum;
    GenMatrix code = sd.c0;
    code.add_row(sd.x);
    auto hist = coset_weight_histogram(code, sd.y, budget);
    const int n = code.n();
    for (size_t w = 0; w < hist.size(); ++w)
        if (hist[w] && static_cast<int>(w) % 4 != (n / 2) % 4)
            throw InvariantError("shadow weight not congruent to n/2 mod 4");
    return WeightEnum::from_hist(hist);
}

namespace {

using Poly = std::vector<mpz_class>;  // coefficient of y^i at index i

Poly poly_mul(const Poly& a, const Poly& b, int nmax) {
    Poly r(static_cast<size_t>(nmax) + 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(nmax); ++j)
            if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    return r;
}

Poly poly_pow(Poly base, int e, int nmax) {
    Poly r(static_cast<size_t>(nmax) + 1);
    r[0] = 1;
    for (int i = 0; i < e; ++i) r = poly_mul(r, base, nmax);
    return r;
}

}  // namespace

GleasonCoeffs gleason_solve(const WeightEnum& w, int n) {
    if (w.n() != n) throw ShapeMismatchError("enumerator length mismatch");
    const int m = n / 8 + 1;
    // Basis i: (1+y^2)^(n/2-4i) * (y^2 (1-y^2)^2)^i, coefficients exact.
    std::vector<Poly> basis;
    Poly one_plus(3);
    one_plus[0] = 1;
    one_plus[2] = 1;
    Poly factor(7);  // y^2 (1-y^2)^2 = y^2 - 2 y^4 + y^6
    factor[2] = 1;
    factor[4] = -2;
    factor[6] = 1;
    for (int i = 0; i < m; ++i)
        basis.push_back(
            poly_mul(poly_pow(one_plus, n / 2 - 4 * i, n), poly_pow(factor, i, n), n));

    // Exact Gaussian elimination on the (n+1) x m coefficient-matching system.
    std::vector<std::vector<mpq_class>> a(static_cast<size_t>(n) + 1,
                                          std::vector<mpq_class>(static_cast<size_t>(m) + 1));
    for (int r = 0; r <= n; ++r) {
        for (int c = 0; c < m; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = basis[static_cast<size_t>(c)][static_cast<size_t>(r)];
        a[static_cast<size_t>(r)][static_cast<size_t>(m)] = w[r];
    }
    int row = 0;
    std::vector<int> pivot_row(static_cast<size_t>(m), -1);
    for (int col = 0; col < m && row <= n; ++col) {
        int pr = -1;
        for (int r = row; r <= n; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) throw NoSolutionError("gleason basis is rank-deficient");
        std::swap(a[static_cast<size_t>(row)], a[static_cast<size_t>(pr)]);
        mpq_class inv = a[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (int c = col; c <= m; ++c) a[static_cast<size_t>(row)][static_cast<size_t>(c)] /= inv;
        for (int r = 0; r <= n; ++r) {
            if (r == row) continue;
            mpq_class f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c <= m; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * a[static_cast<size_t>(row)][static_cast<size_t>(c)];
        }
        pivot_row[static_cast<size_t>(col)] = row;
        ++row;
    }
    for (int r = row; r <= n; ++r)
        if (a[static_cast<size_t>(r)][static_cast<size_t>(m)] != 0)
            throw NoSolutionError("enumerator is not in the Gleason span");
    GleasonCoeffs g;
    g.n = n;
    g.c.resize(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c) g.c[static_cast<size_t>(c)] = a[static_cast<size_t>(pivot_row[static_cast<size_t>(c)])][static_cast<size_t>(m)];
    return g;
}

std::vector<mpq_class> shadow_from_gleason(const GleasonCoeffs& g, int n) {
    if (g.n != n) throw ShapeMismatchError("coefficient set built for a different length");
    std::vector<mpq_class> out(static_cast<size_t>(n) + 1);
    for (size_t i = 0; i < g.c.size(); ++i) {
        if (g.c[i] == 0) continue;
        // (-1)^i 2^(n/2-6i) y^(n/2-4i) (1-y^4)^(2i)
        mpq_class coef = g.c[i];
        if (i % 2) coef = -coef;
        int e = n / 2 - 6 * static_cast<int>(i);
        mpz_class p2 = 1;
        p2 <<= static_cast<unsigned>(e >= 0 ? e : -e);
        if (e >= 0)
            coef *= p2;
        else
            coef /= p2;
        int shift = n / 2 - 4 * static_cast<int>(i);
        mpz_class binom = 1;
        for (int j = 0; j <= 2 * static_cast<int>(i); ++j) {
            int deg = shift + 4 * j;
            if (deg <= n) {
                mpq_class term = coef * binom;
                if (j % 2) term = -term;
                out[static_cast<size_t>(deg)] += term;
            }
            binom = binom * (2 * static_cast<int>(i) - j) / (j + 1);
        }
    }
    return out;
}

bool rational_series_equals(const std::vector<mpq_class>& s, const WeightEnum& w) {
    if (static_cast<int>(s.size()) - 1 != w.n()) return false;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] != mpq_class(w[static_cast<int>(i)])) return false;
    return true;
}

int extremal_bound(int n) {
    if (n < 2 || n % 2) throw InvariantError("extremal_bound needs even n >= 2");
    return 4 * (n / 24) + (n % 24 == 22 ? 6 : 4);
}

bool s_extremal_check(const SelfDualCode& c) {
    if (!c.s()) return false;
    int lhs = 2 * c.d() + *c.s();
    if (lhs == 4 + c.n() / 2) return true;
    return c.n() % 24 == 22 && c.d() == extremal_bound(c.n()) && lhs == 8 + c.n() / 2;
}

mpz_class mass_total(int n, MassKind kind) {
    if (n < 2 || n % 2) throw InvariantError("mass_total needs even n >= 2");
    if (kind == MassKind::type_ii && n % 8 != 0)
        throw InvariantError("doubly-even codes need 8 | n");
    mpz_class prod = 1;
    int lo = (kind == MassKind::all) ? 1 : 0;
    int hi = (kind == MassKind::all) ? n / 2 - 1 : n / 2 - 2;
    for (int i = lo; i <= hi; ++i) {
        mpz_class t = 1;
        t <<= static_cast<unsigned>(i);
        prod *= t + 1;
    }
    return prod;
}

}  // namespace sdc
