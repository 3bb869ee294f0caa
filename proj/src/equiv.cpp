#include "sdc/equiv.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace sdc {

GenMatrix permute_columns(const GenMatrix& m, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != m.n()) throw ShapeMismatchError("permutation length");
    GenMatrix out(m.n());
    for (const auto& r : m.rows()) {
        BitWord v(m.n());
        for (int i = 0; i < m.n(); ++i)
            if (r.get(i)) v.set(perm[i], true);
        out.add_row(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Schreier-Sims stabilizer chain, points 0..n-1. Small inputs only (n <= 128).
// ---------------------------------------------------------------------------

namespace {

using Perm = std::vector<uint8_t>;

Perm compose(const Perm& f, const Perm& g) {  // (f*g)(x) = f(g(x))
    Perm r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

Perm invert(const Perm& f) {
    Perm r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[f[i]] = static_cast<uint8_t>(i);
    return r;
}

bool is_identity(const Perm& f) {
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i] != i) return false;
    return true;
}

class StabChain {
  public:
    explicit StabChain(int n) : n_(n) {}

    void add(const Perm& g) {
        if (is_identity(g)) return;
        sift_in(g, 0);
    }

    mpz_class order() const {
        mpz_class o = 1;
        for (const auto& lv : levels_) o *= static_cast<unsigned long>(lv.orbit.size());
        return o;
    }

  private:
    struct Level {
        int base = -1;
        std::vector<Perm> gens;
        std::vector<int> orbit;                  // points, orbit[0] == base
        std::vector<int> where;                  // point -> index into orbit or -1
        std::vector<Perm> transversal;           // transversal[i] maps base -> orbit[i]
    };

    void rebuild_orbit(Level& lv) {
        lv.orbit.assign(1, lv.base);
        lv.where.assign(static_cast<size_t>(n_), -1);
        lv.where[static_cast<size_t>(lv.base)] = 0;
        Perm id(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) id[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
        lv.transversal.assign(1, id);
        for (size_t h = 0; h < lv.orbit.size(); ++h) {
            int x = lv.orbit[h];
            for (const auto& g : lv.gens) {
                int y = g[static_cast<size_t>(x)];
                if (lv.where[static_cast<size_t>(y)] < 0) {
                    lv.where[static_cast<size_t>(y)] = static_cast<int>(lv.orbit.size());
                    lv.orbit.push_back(y);
                    lv.transversal.push_back(compose(g, lv.transversal[h]));
                }
            }
        }
    }

    void sift_in(Perm g, size_t depth) {
        for (size_t lvl = depth; ; ++lvl) {
            if (lvl == levels_.size()) {
                int moved = -1;
                for (int i = 0; i < n_; ++i)
                    if (g[static_cast<size_t>(i)] != i) {
                        moved = i;
                        break;
                    }
                if (moved < 0) return;  // identity
                levels_.push_back(Level{});
                levels_.back().base = moved;
            }
            Level& lv = levels_[lvl];
            int img = g[static_cast<size_t>(lv.base)];
            if (lv.where.empty() || lv.where[static_cast<size_t>(img)] < 0) {
                // g genuinely extends this level
                lv.gens.push_back(g);
                rebuild_orbit(lv);
                // close with Schreier generators
                for (size_t h = 0; h < lv.orbit.size(); ++h) {
                    for (const auto& s : lv.gens) {
                        int y = s[static_cast<size_t>(lv.orbit[h])];
                        Perm sch = compose(invert(lv.transversal[static_cast<size_t>(
                                                lv.where[static_cast<size_t>(y)])]),
                                            compose(s, lv.transversal[h]));
                        if (!is_identity(sch)) sift_in(sch, lvl + 1);
                    }
                }
                return;
            }
            g = compose(invert(lv.transversal[static_cast<size_t>(
                            lv.where[static_cast<size_t>(img)])]),
                        g);
            if (is_identity(g)) return;
        }
    }

    int n_;
    std::vector<Level> levels_;
};

}  // namespace

mpz_class permutation_group_order(int n, const std::vector<std::vector<int>>& gens) {
    StabChain chain(n);
    for (const auto& g : gens) {
        Perm p(g.begin(), g.end());
        chain.add(p);
    }
    return chain.order();
}

// ---------------------------------------------------------------------------
// Canonical search
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kHashSeed = 0x9e3779b97f4a7c15ull;

uint64_t mix(uint64_t h, uint64_t v) {
    h ^= v + kHashSeed + (h << 6) + (h >> 2);
    return h * 0x100000001b3ull;
}

// Ordered partition of the coordinate set: coordinates grouped contiguously
// in `order`, cell boundaries in `starts` (ascending, sentinel n at the end).
struct Partition {
    std::vector<uint8_t> order;
    std::vector<int> starts;
    std::vector<int> cell_start_of;  // coord -> start index of its cell

    int n() const { return static_cast<int>(order.size()); }

    static Partition unit(int n) {
        Partition p;
        p.order.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) p.order[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
        p.starts = {0, n};
        p.cell_start_of.assign(static_cast<size_t>(n), 0);
        return p;
    }

    bool discrete() const { return static_cast<int>(starts.size()) == n() + 1; }
};

struct WordClass {
    int weight;
    std::vector<BitWord> words;
    std::vector<std::vector<uint8_t>> supports;
};

struct Ctx {
    int n = 0, k = 0;
    GenMatrix base;  // rref of the input
    std::vector<WordClass> classes;
    SearchBudget budget;
    uint64_t nodes = 0;

    // best leaf
    bool has_best = false;
    std::vector<uint64_t> best_path;
    std::string best_bytes;
    std::vector<int> best_perm;   // coord -> position
    GenMatrix best_canon;

    std::vector<Perm> gens;

    // scratch
    std::vector<std::vector<uint32_t>> acc;  // per class, per coord
    std::vector<uint8_t> touched;

    std::vector<uint64_t> path;
    std::vector<int> base_seq;  // individualized coordinates
};

// Collect the smallest-weight codeword classes until they span the code and
// give at least 4n words (or the code is exhausted). Incidence with these
// words is what the refinement sees.
std::vector<WordClass> collect_classes(const GenMatrix& red) {
    const int n = red.n(), k = red.k();
    if (k > 26) throw BudgetExceededError("canonical_form: 2^k codeword collection with k > 26");
    auto hist = coset_weight_histogram(red, BitWord(n), SweepBudget{26, {}});
    std::vector<int> weights;
    long need = std::max(4L * n, 1L);
    long have = 0;
    for (int w = 1; w <= n; ++w)
        if (hist[static_cast<size_t>(w)]) {
            weights.push_back(w);
            have += static_cast<long>(hist[static_cast<size_t>(w)]);
            if (have >= need) break;
        }
    for (;;) {
        int wmax = weights.back();
        // one sweep collecting everything up to wmax
        std::vector<WordClass> classes;
        for (int w : weights) classes.push_back(WordClass{w, {}, {}});
        auto bucket = [&](const BitWord& v) {
            int w = v.weight();
            for (auto& c : classes)
                if (c.weight == w) {
                    c.words.push_back(v);
                    return;
                }
        };
        BitWord acc(n);
        const uint64_t total = uint64_t{1} << k;
        for (uint64_t g = 1; g < total; ++g) {
            acc ^= red.row(std::countr_zero(g));
            if (acc.weight() <= wmax) bucket(acc);
        }
        // spanning check
        GenMatrix span(n);
        for (const auto& c : classes)
            for (const auto& w : c.words) span.add_row(w);
        int rank = 0;
        rref(span, &rank);
        if (rank == k || have == static_cast<long>(total) - 1) {
            for (auto& c : classes) {
                c.supports.reserve(c.words.size());
                for (const auto& w : c.words) {
                    std::vector<uint8_t> sup;
                    sup.reserve(static_cast<size_t>(c.weight));
                    for (int i = 0; i < n; ++i)
                        if (w.get(i)) sup.push_back(static_cast<uint8_t>(i));
                    c.supports.push_back(std::move(sup));
                }
            }
            return classes;
        }
        int next = -1;
        for (int w = wmax + 1; w <= n; ++w)
            if (hist[static_cast<size_t>(w)]) {
                next = w;
                break;
            }
        if (next < 0) throw InvariantError("codeword classes do not span the code");
        weights.push_back(next);
        have += static_cast<long>(hist[static_cast<size_t>(next)]);
    }
}

// Refine p to a stable partition, starting from the given splitter queue.
// Splitters are masks frozen at enqueue time. Mixes every split event into h.
void refine(Ctx& ctx, Partition& p, std::deque<BitWord>& queue, uint64_t& h) {
    const int n = ctx.n;
    const size_t ncls = ctx.classes.size();
    while (!queue.empty()) {
        BitWord splitter = queue.front();
        queue.pop_front();
        // acc[c][i] = sum over words w of class c covering i of |w & splitter|
        for (int i : ctx.touched)
            for (size_t c = 0; c < ncls; ++c) ctx.acc[c][static_cast<size_t>(i)] = 0;
        ctx.touched.clear();
        for (size_t c = 0; c < ncls; ++c) {
            const auto& cls = ctx.classes[c];
            for (size_t wi = 0; wi < cls.words.size(); ++wi) {
                int t = (cls.words[wi] & splitter).weight();
                if (!t) continue;
                for (uint8_t i : cls.supports[wi]) {
                    if (ctx.acc[0][i] == 0) {
                        bool any = false;
                        for (size_t cc = 0; cc < ncls && !any; ++cc) any = ctx.acc[cc][i] != 0;
                        if (!any) ctx.touched.push_back(i);
                    }
                    ctx.acc[c][i] += static_cast<uint32_t>(t);
                }
            }
        }
        // split every cell whose members disagree on the key
        std::vector<int> new_starts;
        for (size_t si = 0; si + 1 < p.starts.size(); ++si) {
            int s = p.starts[si], e = p.starts[si + 1];
            if (e - s == 1) continue;
            auto key_of = [&](uint8_t coord) {
                uint64_t kh = kHashSeed;
                for (size_t c = 0; c < ncls; ++c) kh = mix(kh, ctx.acc[c][coord]);
                return kh;
            };
            uint64_t k0 = key_of(p.order[static_cast<size_t>(s)]);
            bool uniform = true;
            for (int i = s + 1; i < e && uniform; ++i)
                uniform = key_of(p.order[static_cast<size_t>(i)]) == k0;
            if (uniform) continue;
            // order sub-cells by the exact key vector, then coordinate
            std::stable_sort(p.order.begin() + s, p.order.begin() + e,
                             [&](uint8_t a, uint8_t b) {
                                 for (size_t c = 0; c < ncls; ++c) {
                                     if (ctx.acc[c][a] != ctx.acc[c][b])
                                         return ctx.acc[c][a] < ctx.acc[c][b];
                                 }
                                 return a < b;
                             });
            h = mix(h, static_cast<uint64_t>(s));
            for (int i = s; i < e;) {
                int j = i;
                while (j < e) {
                    bool same = true;
                    for (size_t c = 0; c < ncls && same; ++c)
                        same = ctx.acc[c][p.order[static_cast<size_t>(j)]] ==
                               ctx.acc[c][p.order[static_cast<size_t>(i)]];
                    if (!same) break;
                    ++j;
                }
                if (i > s) new_starts.push_back(i);
                for (size_t c = 0; c < ncls; ++c)
                    h = mix(h, ctx.acc[c][p.order[static_cast<size_t>(i)]]);
                h = mix(h, static_cast<uint64_t>(j - i));
                if (j - i < e - s) {
                    BitWord mask(n);
                    for (int q = i; q < j; ++q) mask.set(p.order[static_cast<size_t>(q)], true);
                    queue.push_back(mask);
                }
                i = j;
            }
        }
        if (!new_starts.empty()) {
            p.starts.insert(p.starts.end(), new_starts.begin(), new_starts.end());
            std::sort(p.starts.begin(), p.starts.end());
            for (size_t si = 0; si + 1 < p.starts.size(); ++si)
                for (int i = p.starts[si]; i < p.starts[si + 1]; ++i)
                    p.cell_start_of[p.order[static_cast<size_t>(i)]] = p.starts[si];
        }
    }
}

std::vector<int> leaf_perm(const Partition& p) {
    std::vector<int> perm(static_cast<size_t>(p.n()));
    for (int pos = 0; pos < p.n(); ++pos) perm[p.order[static_cast<size_t>(pos)]] = pos;
    return perm;
}

bool perm_preserves_code(const Ctx& ctx, const std::vector<int>& g) {
    for (const auto& r : ctx.base.rows()) {
        BitWord v(ctx.n);
        for (int i = 0; i < ctx.n; ++i)
            if (r.get(i)) v.set(g[static_cast<size_t>(i)], true);
        if (!rref_contains(ctx.base, v)) return false;
    }
    return true;
}

void handle_leaf(Ctx& ctx, const Partition& p) {
    std::vector<int> perm = leaf_perm(p);
    GenMatrix canon = rref(permute_columns(ctx.base, perm));
    std::string bytes = canon.key();
    if (!ctx.has_best) {
        ctx.has_best = true;
        ctx.best_path = ctx.path;
        ctx.best_bytes = std::move(bytes);
        ctx.best_perm = std::move(perm);
        ctx.best_canon = canon;
        return;
    }
    int cmp = bytes.compare(ctx.best_bytes);
    if (cmp < 0) {
        ctx.best_path = ctx.path;
        ctx.best_bytes = std::move(bytes);
        ctx.best_perm = std::move(perm);
        ctx.best_canon = canon;
        return;
    }
    if (cmp > 0) return;
    // equal canonical image: best_perm^{-1} o perm is an automorphism
    std::vector<int> inv(static_cast<size_t>(ctx.n));
    for (int i = 0; i < ctx.n; ++i) inv[static_cast<size_t>(ctx.best_perm[static_cast<size_t>(i)])] = i;
    std::vector<int> g(static_cast<size_t>(ctx.n));
    bool id = true;
    for (int i = 0; i < ctx.n; ++i) {
        g[static_cast<size_t>(i)] = inv[static_cast<size_t>(perm[static_cast<size_t>(i)])];
        id = id && g[static_cast<size_t>(i)] == i;
    }
    if (id || !perm_preserves_code(ctx, g)) return;
    Perm pg(g.begin(), g.end());
    for (const auto& e : ctx.gens)
        if (e == pg) return;
    ctx.gens.push_back(std::move(pg));
}

// Orbit ids of coordinates under the subgroup of discovered automorphisms
// fixing the current individualization prefix pointwise (union-find).
void prefix_orbits(const Ctx& ctx, std::vector<int>& parent) {
    const int n = ctx.n;
    parent.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& g : ctx.gens) {
        bool fixes = true;
        for (int b : ctx.base_seq)
            if (g[static_cast<size_t>(b)] != b) {
                fixes = false;
                break;
            }
        if (!fixes) continue;
        for (int i = 0; i < n; ++i) {
            int a = find(i), b = find(g[static_cast<size_t>(i)]);
            if (a != b) parent[static_cast<size_t>(a)] = b;
        }
    }
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = find(i);
}

void dfs(Ctx& ctx, const Partition& p) {
    if (++ctx.nodes > ctx.budget.max_nodes)
        throw BudgetExceededError("canonical_form: node budget exceeded");
    // target cell: first non-singleton
    int tstart = -1, tend = -1;
    for (size_t si = 0; si + 1 < p.starts.size(); ++si)
        if (p.starts[si + 1] - p.starts[si] > 1) {
            tstart = p.starts[si];
            tend = p.starts[si + 1];
            break;
        }
    if (tstart < 0) {
        handle_leaf(ctx, p);
        return;
    }
    std::vector<uint8_t> cell(p.order.begin() + tstart, p.order.begin() + tend);
    std::sort(cell.begin(), cell.end());
    std::vector<uint8_t> processed;
    std::vector<int> orbits;
    size_t gens_seen = SIZE_MAX;
    for (uint8_t v : cell) {
        if (!processed.empty()) {
            if (gens_seen != ctx.gens.size()) {
                prefix_orbits(ctx, orbits);
                gens_seen = ctx.gens.size();
            }
            bool pruned = false;
            for (uint8_t u : processed)
                if (orbits[u] == orbits[v]) {
                    pruned = true;
                    break;
                }
            if (pruned) continue;
        }
        processed.push_back(v);
        // individualize v in front of its cell, refine with {v} as splitter
        Partition q = p;
        auto it = std::find(q.order.begin() + tstart, q.order.begin() + tend, v);
        std::rotate(q.order.begin() + tstart, it, it + 1);
        q.starts.push_back(tstart + 1);
        std::sort(q.starts.begin(), q.starts.end());
        for (size_t si = 0; si + 1 < q.starts.size(); ++si)
            for (int i = q.starts[si]; i < q.starts[si + 1]; ++i)
                q.cell_start_of[q.order[static_cast<size_t>(i)]] = q.starts[si];
        uint64_t h = mix(kHashSeed, static_cast<uint64_t>(tstart));
        BitWord mask(ctx.n);
        mask.set(v, true);
        std::deque<BitWord> queue{mask};
        refine(ctx, q, queue, h);
        // trace comparison against the current best leaf path
        size_t depth = ctx.path.size();
        if (ctx.has_best) {
            if (depth < ctx.best_path.size()) {
                if (h > ctx.best_path[depth]) continue;      // prune
                if (h < ctx.best_path[depth]) ctx.has_best = false;  // dominated
            } else {
                continue;  // deeper than the best leaf: cannot be canonical
            }
        }
        ctx.path.push_back(h);
        ctx.base_seq.push_back(v);
        dfs(ctx, q);
        ctx.path.pop_back();
        ctx.base_seq.pop_back();
    }
}

}  // namespace

CanonicalCert canonical_form(const GenMatrix& m, const SearchBudget& budget) {
    int rank = 0;
    GenMatrix red = rref(m, &rank);
    if (rank != m.k()) throw InvariantError("canonical_form: input rows are dependent");

    Ctx ctx;
    ctx.n = red.n();
    ctx.k = red.k();
    ctx.base = red;
    ctx.budget = budget;
    ctx.classes = collect_classes(red);
    ctx.acc.assign(ctx.classes.size(), std::vector<uint32_t>(static_cast<size_t>(ctx.n), 0));
    ctx.touched.reserve(static_cast<size_t>(ctx.n));
    for (int i = 0; i < ctx.n; ++i) ctx.touched.push_back(static_cast<uint8_t>(i));

    Partition p = Partition::unit(ctx.n);
    uint64_t h0 = kHashSeed;
    BitWord all(ctx.n);
    for (int i = 0; i < ctx.n; ++i) all.set(i, true);
    std::deque<BitWord> queue{all};
    refine(ctx, p, queue, h0);
    ctx.path.push_back(h0);
    dfs(ctx, p);

    CanonicalCert cert;
    cert.canon = ctx.best_canon;
    cert.perm = ctx.best_perm;
    cert.aut_gens.reserve(ctx.gens.size());
    for (const auto& g : ctx.gens) cert.aut_gens.emplace_back(g.begin(), g.end());
    cert.aut_order = permutation_group_order(ctx.n, cert.aut_gens);
    return cert;
}

bool are_equivalent(const GenMatrix& a, const GenMatrix& b, const SearchBudget& budget) {
    if (a.n() != b.n() || a.k() != b.k()) throw ShapeMismatchError("codes of different shape");
    return canonical_form(a, budget).key() == canonical_form(b, budget).key();
}

std::optional<std::vector<int>> equivalence_witness(const GenMatrix& a, const GenMatrix& b,
                                                    const SearchBudget& budget) {
    if (a.n() != b.n() || a.k() != b.k()) throw ShapeMismatchError("codes of different shape");
    CanonicalCert ca = canonical_form(a, budget);
    CanonicalCert cb = canonical_form(b, budget);
    if (ca.key() != cb.key()) return std::nullopt;
    // pi = cb.perm^{-1} o ca.perm maps a-coordinates to b-coordinates
    std::vector<int> inv(static_cast<size_t>(b.n()));
    for (int i = 0; i < b.n(); ++i) inv[static_cast<size_t>(cb.perm[static_cast<size_t>(i)])] = i;
    std::vector<int> pi(static_cast<size_t>(a.n()));
    for (int i = 0; i < a.n(); ++i) pi[static_cast<size_t>(i)] = inv[static_cast<size_t>(ca.perm[static_cast<size_t>(i)])];
    return pi;
}

mpz_class aut_order(const GenMatrix& m, const SearchBudget& budget) {
    return canonical_form(m, budget).aut_order;
}

}  // namespace sdc
