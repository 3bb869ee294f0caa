#include "sdc/construct.hpp"

#include <algorithm>
#include <map>

#include "sdc/kernels.hpp"

namespace sdc {

namespace {

// All codewords with the given weight, in the order the Gray sweep visits
// them. k <= 26 guard lives in the callers' sweeps.
std::vector<BitWord> words_of_weight(const GenMatrix& gen, int weight) {
    std::vector<BitWord> out;
    BitWord acc(gen.n());
    const uint64_t total = uint64_t{1} << gen.k();
    for (uint64_t g = 1; g < total; ++g) {
        acc ^= gen.row(std::countr_zero(g));
        if (acc.weight() == weight) out.push_back(acc);
    }
    return out;
}

bool lex_less(const BitWord& a, const BitWord& b) { return BitWord::lex_cmp(a, b) < 0; }

}  // namespace

SelfDualCode subtract_11(const SelfDualCode& c, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= c.n() || j >= c.n())
        throw InvariantError("subtract_11 needs two distinct coordinates");
    if (c.d() < 3)
        throw InvariantError("subtract_11 needs d >= 3 (degenerate columns otherwise)");
    if (c.n() < 4) throw InvariantError("subtract_11 needs length >= 4");
    // basis of the subcode agreeing on columns i and j
    std::vector<BitWord> rows = c.gen().rows();
    int pivot = -1;
    for (size_t r = 0; r < rows.size(); ++r)
        if (rows[r].get(i) != rows[r].get(j)) {
            pivot = static_cast<int>(r);
            break;
        }
    if (pivot < 0)
        throw InvariantError("columns are equal on the whole code (d <= 2 expected)");
    std::vector<BitWord> kept;
    for (size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(r) == pivot) continue;
        BitWord w = rows[r];
        if (w.get(i) != w.get(j)) w ^= rows[static_cast<size_t>(pivot)];
        kept.push_back(w);
    }
    int lo = std::min(i, j), hi = std::max(i, j);
    GenMatrix out(c.n() - 2);
    for (auto& w : kept) out.add_row(w.without_coord(hi).without_coord(lo));
    return SelfDualCode::validate(out);
}

ShadowTracked subtract_11_shadow_tracked(const SelfDualCode& c) {
    if (c.is_type_ii()) throw HypothesisViolatedError("Type I input required");
    const int d = c.d() - 2;
    if (d <= 0 || d % 4 != 0)
        throw HypothesisViolatedError("needs minimum weight d+2 with d = 0 (mod 4), d != 0");
    if (!c.s() || *c.s() < 3) throw HypothesisViolatedError("needs shadow weight s >= 3");

    ShadowDecomp sd = doubly_even_subcode(c);
    // y: minimal-weight shadow vector; x: minimum-weight codeword (weight
    // d+2 = 2 mod 4, hence in C2 automatically).
    const int s = *c.s();
    GenMatrix code = sd.c0;
    code.add_row(sd.x);
    BitWord y(c.n());
    {
        BitWord acc = sd.y;
        bool found = acc.weight() == s;
        if (found) y = acc;
        const uint64_t total = uint64_t{1} << code.k();
        for (uint64_t g = 1; g < total && !found; ++g) {
            acc ^= code.row(std::countr_zero(g));
            if (acc.weight() == s) {
                y = acc;
                found = true;
            }
        }
    }
    auto xs = words_of_weight(c.gen(), c.d());
    BitWord x = xs.front();
    int ci = -1, cj = -1;
    for (int b = 0; b < c.n(); ++b) {
        if (x.get(b) && y.get(b)) {
            ci = b;
            break;
        }
    }
    for (int b = 0; b < c.n(); ++b) {
        if (x.get(b) && !y.get(b)) {
            cj = b;
            break;
        }
    }
    if (ci < 0 || cj < 0) throw InvariantError("witness coordinates not found");

    ShadowTracked out;
    out.code = subtract_11(c, ci, cj);
    out.i = ci;
    out.j = cj;
    if (out.code.d() != d)
        throw InvariantError("tracked subtraction: minimum weight is not d");
    if (!out.code.s() || *out.code.s() != s - 1)
        throw InvariantError("tracked subtraction: shadow weight is not s-1");
    return out;
}

namespace {

// Coset representatives of span(rows) inside span(rows)^perp, reduced to the
// 2-dimensional quotient. Returns the two candidates distinct from the coset
// of z1 = (11|0...0).
std::vector<BitWord> completion_candidates(const GenMatrix& tilde) {
    GenMatrix perp = dual(tilde);
    GenMatrix tilde_r = rref(tilde);
    // reduce dual basis modulo tilde, keep a basis of the quotient
    GenMatrix quot(tilde.n());
    std::vector<BitWord> qbasis;
    for (const auto& v : perp.rows()) {
        BitWord r = rref_reduce(tilde_r, v);
        for (const auto& q : qbasis) {
            int p = q.lowest_set();
            if (p >= 0 && r.get(p)) r ^= q;
        }
        if (!r.is_zero()) qbasis.push_back(r);
        if (qbasis.size() == 2) break;
    }
    if (qbasis.size() != 2) throw InvariantError("quotient of the extension is not 2-dimensional");
    BitWord z1(tilde.n());
    z1.set(0, true);
    z1.set(1, true);
    auto same_coset = [&](const BitWord& a, const BitWord& b) {
        return rref_contains(tilde_r, a ^ b);
    };
    std::vector<BitWord> cands;
    const BitWord& u = qbasis[0];
    const BitWord& v = qbasis[1];
    for (const BitWord& w : {u, v, u ^ v})
        if (!same_coset(w, z1)) cands.push_back(w);
    if (cands.size() != 2) throw InvariantError("expected exactly two completion cosets");
    return cands;
}

}  // namespace

std::vector<Extension> recursive_extend(const SelfDualCode& c, const SearchBudget& budget) {
    const int n = c.n(), k = c.k(), d = c.d();
    if (k > 26) throw BudgetExceededError("recursive_extend: seed dimension too large");

    // Step 1: G_d, a weight-d generator basis of the subcode C_d.
    auto wd = words_of_weight(c.gen(), d);
    std::sort(wd.begin(), wd.end(), lex_less);
    GenMatrix span(n);
    std::vector<BitWord> gd;
    for (const auto& w : wd) {
        GenMatrix test = span;
        test.add_row(w);
        int rank = 0;
        rref(test, &rank);
        if (rank == static_cast<int>(gd.size()) + 1) {
            gd.push_back(w);
            span = rref(test);
        }
    }
    const int kd = static_cast<int>(gd.size());
    if (kd == 0) throw InvariantError("no minimum-weight words");

    // Step 2: complement E, the lexicographically least extension to a basis
    // of C. Codewords are enumerated in lex order.
    std::vector<BitWord> all;
    all.reserve((uint64_t{1} << k) - 1);
    {
        BitWord acc(n);
        const uint64_t total = uint64_t{1} << k;
        for (uint64_t g = 1; g < total; ++g) {
            acc ^= c.gen().row(std::countr_zero(g));
            all.push_back(acc);
        }
    }
    std::sort(all.begin(), all.end(), lex_less);
    std::vector<BitWord> ecomp;
    GenMatrix espan = span;
    for (const auto& w : all) {
        if (static_cast<int>(ecomp.size()) == k - kd) break;
        if (rref_contains(espan, w)) continue;
        ecomp.push_back(w);
        espan.add_row(w);
        espan = rref(espan);
    }

    // Step 3: all sign vectors, both completion cosets, keep minimum weight
    // exactly d+2.
    std::map<std::string, Extension> dedup;
    const uint64_t signs = uint64_t{1} << (k - kd);
    for (uint64_t a = 0; a < signs; ++a) {
        GenMatrix tilde(n + 2);
        for (const auto& g : gd) tilde.add_row(g.with_prefix2(true, true));
        for (size_t e = 0; e < ecomp.size(); ++e) {
            bool tag = (a >> e) & 1;
            tilde.add_row(ecomp[e].with_prefix2(tag, tag));
        }
        for (const auto& z : completion_candidates(tilde)) {
            if (z.weight() % 2) continue;  // odd coset cannot complete to self-dual
            GenMatrix ext = tilde;
            ext.add_row(z);
            // fast rejection: any nonzero word below d+2 kills the candidate
            GenMatrix red = rref(ext);
            if (red.k() != k + 1) continue;
            std::vector<uint64_t> lo(static_cast<size_t>(red.k())), hi(static_cast<size_t>(red.k()));
            for (int r = 0; r < red.k(); ++r) {
                lo[static_cast<size_t>(r)] = red.row(r).lo();
                hi[static_cast<size_t>(r)] = red.row(r).hi();
            }
            if (kernels::any_weight_below(lo.data(), hi.data(), red.k(), 0, 0, d + 2, true))
                continue;
            SelfDualCode code = SelfDualCode::validate(ext);
            CanonicalCert cert = canonical_form(code.gen(), budget);
            dedup.emplace(cert.key(), Extension{std::move(code), std::move(cert)});
        }
    }
    std::vector<Extension> out;
    out.reserve(dedup.size());
    for (auto& [key, ext] : dedup) out.push_back(std::move(ext));
    return out;
}

SelfDualCode build_up(const SelfDualCode& c, const BitWord& x) {
    if (x.length() != c.n()) throw ShapeMismatchError("x must have length n");
    if (x.weight() % 2 == 0) throw EvenWeightVectorError("building-up needs odd-weight x");
    GenMatrix out(c.n() + 2);
    out.add_row(x.with_prefix2(true, false));
    for (const auto& r : c.gen().rows()) {
        bool y = BitWord::inner(x, r);
        out.add_row(r.with_prefix2(y, y));
    }
    return SelfDualCode::validate(out);
}

std::vector<Extension> harada_munemasa_extend(const SelfDualCode& c, const std::vector<bool>& a,
                                              const SearchBudget& budget) {
    if (static_cast<int>(a.size()) != c.k() - 1)
        throw ShapeMismatchError("tag vector must have length n/2 - 1");
    GenMatrix tilde(c.n() + 2);
    for (int r = 0; r < c.k(); ++r) {
        bool tag = r < c.k() - 1 ? a[static_cast<size_t>(r)] : false;
        tilde.add_row(c.gen().row(r).with_prefix2(tag, tag));
    }
    std::map<std::string, Extension> dedup;
    for (const auto& z : completion_candidates(tilde)) {
        if (z.weight() % 2) continue;
        if (z.weight() <= 2) continue;
        GenMatrix ext = tilde;
        ext.add_row(z);
        int rank = 0;
        rref(ext, &rank);
        if (rank != c.k() + 1) continue;
        SelfDualCode code = SelfDualCode::validate(ext);
        if (code.d() <= 2) continue;
        CanonicalCert cert = canonical_form(code.gen(), budget);
        dedup.emplace(cert.key(), Extension{std::move(code), std::move(cert)});
    }
    std::vector<Extension> out;
    for (auto& [key, ext] : dedup) out.push_back(std::move(ext));
    return out;
}

int weight_d_subcode_dim(const SelfDualCode& c) {
    auto wd = words_of_weight(c.gen(), c.d());
    GenMatrix span(c.n());
    for (const auto& w : wd) span.add_row(w);
    int rank = 0;
    rref(span, &rank);
    return rank;
}

}  // namespace sdc
