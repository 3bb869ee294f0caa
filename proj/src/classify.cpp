#include "sdc/classify.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace sdc {

// ---------------------------------------------------------------------------
// CodeDB
// ---------------------------------------------------------------------------

bool CodeDB::insert(DbEntry e) {
    std::string key = e.canon.key();
    return entries_.emplace(std::move(key), std::move(e)).second;
}

bool CodeDB::contains(const std::string& canon_key) const {
    return entries_.count(canon_key) != 0;
}

const DbEntry* CodeDB::find(const std::string& canon_key) const {
    auto it = entries_.find(canon_key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const DbEntry*> CodeDB::entries() const {
    std::vector<const DbEntry*> out;
    out.reserve(entries_.size());
    for (const auto& [k, e] : entries_) out.push_back(&e);
    return out;
}

void CodeDB::save(std::ostream& os) const {
    os << "SDDB n=" << n_ << " type=" << scope_ << " complete=" << (complete_ ? 1 : 0)
       << " count=" << entries_.size() << '\n';
    for (const auto& [k, e] : entries_) {
        os << "code d=" << e.d << " s=";
        if (e.s)
            os << *e.s;
        else
            os << '-';
        os << " aut=" << e.aut.get_str() << " prov=" << (e.prov.empty() ? "-" : e.prov) << '\n';
        e.canon.print(os);
    }
}

void CodeDB::save_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write " + path);
    save(f);
}

namespace {

std::string expect_kv(std::istringstream& is, const std::string& key) {
    std::string tok;
    if (!(is >> tok) || tok.rfind(key + "=", 0) != 0)
        throw ParseError("CodeDB: expected " + key + "=...");
    return tok.substr(key.size() + 1);
}

}  // namespace

CodeDB CodeDB::load(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("CodeDB: empty input");
    std::istringstream hs(line);
    std::string magic;
    hs >> magic;
    if (magic != "SDDB") throw ParseError("CodeDB: missing SDDB header");
    CodeDB db;
    db.n_ = std::stoi(expect_kv(hs, "n"));
    db.scope_ = expect_kv(hs, "type");
    db.complete_ = expect_kv(hs, "complete") == "1";
    size_t count = std::stoul(expect_kv(hs, "count"));
    for (size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line)) throw ParseError("CodeDB: truncated entry header");
        std::istringstream es(line);
        std::string magic2;
        es >> magic2;
        if (magic2 != "code") throw ParseError("CodeDB: expected code line");
        DbEntry e;
        e.n = db.n_;
        e.d = std::stoi(expect_kv(es, "d"));
        std::string s = expect_kv(es, "s");
        if (s != "-") e.s = std::stoi(s);
        e.aut = mpz_class(expect_kv(es, "aut"));
        e.prov = expect_kv(es, "prov");
        if (e.prov == "-") e.prov.clear();
        GenMatrix m(db.n_);
        for (int r = 0; r < db.n_ / 2; ++r) {
            if (!std::getline(is, line)) throw ParseError("CodeDB: truncated matrix");
            size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) throw ParseError("CodeDB: blank row inside matrix");
            size_t en = line.find_last_not_of(" \t\r");
            m.add_row(BitWord::parse(std::string_view(line.data() + b, en - b + 1)));
        }
        e.canon = m;
        if (!db.insert(std::move(e))) throw ParseError("CodeDB: duplicate canonical form");
    }
    return db;
}

CodeDB CodeDB::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return load(f);
}

SelfDualCode entry_code(const DbEntry& e) { return SelfDualCode::validate(e.canon); }

// ---------------------------------------------------------------------------
// Mass audit
// ---------------------------------------------------------------------------

MassAudit mass_audit(const CodeDB& db, AuditScope scope) {
    MassAudit a;
    a.found = 0;
    for (const DbEntry* e : db.entries()) {
        if (scope == AuditScope::type_i && e->type() != CodeType::type_i) continue;
        if (scope == AuditScope::type_ii && e->type() != CodeType::type_ii) continue;
        a.found += mpq_class(1) / mpq_class(e->aut);
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(db.n()));
    mpz_class expected_count;
    bool has_type_ii = db.n() % 8 == 0;
    switch (scope) {
        case AuditScope::all:
            expected_count = mass_total(db.n(), MassKind::all);
            break;
        case AuditScope::type_ii:
            expected_count = mass_total(db.n(), MassKind::type_ii);
            break;
        case AuditScope::type_i:
            expected_count = mass_total(db.n(), MassKind::all);
            if (has_type_ii) expected_count -= mass_total(db.n(), MassKind::type_ii);
            break;
    }
    a.expected = mpq_class(expected_count) / mpq_class(fact);
    a.expected.canonicalize();
    return a;
}

// ---------------------------------------------------------------------------
// Parallel helpers: deterministic map over an index range
// ---------------------------------------------------------------------------

namespace {

template <typename Out>
std::vector<Out> parallel_map(size_t count, int workers,
                              const std::function<Out(size_t)>& fn) {
    std::vector<Out> results(count);
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    int nthreads = std::min<int>(workers, static_cast<int>(count));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    results[i] = fn(i);
                }
            } catch (...) {
                errors[static_cast<size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

DbEntry make_entry(const SelfDualCode& code, const CanonicalCert& cert, std::string prov) {
    DbEntry e;
    e.canon = cert.canon;
    e.n = code.n();
    e.d = code.d();
    e.s = code.s();
    e.aut = cert.aut_order;
    e.prov = std::move(prov);
    return e;
}

// The unique [2,1] self-dual code.
DbEntry e2_entry() {
    GenMatrix g(2);
    g.add_row(BitWord::parse("11"));
    SelfDualCode c = SelfDualCode::validate(g);
    return make_entry(c, canonical_form(g), "seed");
}

// Coset representatives of GF(2)^n / C with odd weight: free coordinates of
// the rref arbitrary, pivot coordinates zero.
std::vector<BitWord> odd_coset_reps(const GenMatrix& gen) {
    const int n = gen.n(), k = gen.k();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int r = 0; r < k; ++r) is_pivot[static_cast<size_t>(gen.row(r).lowest_set())] = true;
    std::vector<int> free_coords;
    for (int i = 0; i < n; ++i)
        if (!is_pivot[static_cast<size_t>(i)]) free_coords.push_back(i);
    std::vector<BitWord> reps;
    const uint64_t total = uint64_t{1} << free_coords.size();
    for (uint64_t m = 1; m < total; ++m) {
        if (std::popcount(m) % 2 == 0) continue;
        BitWord v(n);
        for (size_t b = 0; b < free_coords.size(); ++b)
            if ((m >> b) & 1) v.set(free_coords[b], true);
        reps.push_back(v);
    }
    return reps;
}

}  // namespace

CodeDB classify_step(const CodeDB& seeds, const ClassifyOptions& opts) {
    if (!seeds.complete()) throw IncompleteSeedsError("seed DB is not flagged complete");
    const int n = seeds.n() + 2;
    auto seed_entries = seeds.entries();

    struct TaskOut {
        std::vector<DbEntry> found;
    };
    std::function<TaskOut(size_t)> task = [&](size_t idx) {
        const DbEntry* se = seed_entries[idx];
        SelfDualCode seed = entry_code(*se);
        TaskOut out;
        std::string tag = "n" + std::to_string(seeds.n()) + "#" + std::to_string(idx);
        // d = 2 route: e2 + D, fresh pair in front
        {
            GenMatrix g(n);
            BitWord e2row(n);
            e2row.set(0, true);
            e2row.set(1, true);
            g.add_row(e2row);
            for (const auto& r : seed.gen().rows()) g.add_row(r.with_prefix2(false, false));
            SelfDualCode code = SelfDualCode::validate(g);
            out.found.push_back(make_entry(code, canonical_form(g, opts.budget), "e2sum:" + tag));
        }
        // d > 2 route: building-up over all odd coset representatives
        for (const auto& x : odd_coset_reps(seed.gen())) {
            SelfDualCode code = build_up(seed, x);
            out.found.push_back(
                make_entry(code, canonical_form(code.gen(), opts.budget), "buildup:" + tag));
        }
        return out;
    };
    auto results = parallel_map<TaskOut>(seed_entries.size(), opts.workers, task);

    CodeDB db(n, "both", false);
    for (const auto& r : results)
        for (const auto& e : r.found) db.insert(e);
    MassAudit audit = mass_audit(db, AuditScope::all);
    db.set_complete(audit.exact());
    return db;
}

CodeDB classify_all(int n, const ClassifyOptions& opts) {
    if (n < 2 || n % 2) throw InvariantError("classify_all needs even n >= 2");
    if (n > opts.max_n)
        throw BudgetExceededError("classify_all beyond n=" + std::to_string(opts.max_n) +
                                  " refused; raise the budget to opt in");
    CodeDB db(2, "both", true);
    db.insert(e2_entry());
    for (int m = 4; m <= n; m += 2) db = classify_step(db, opts);
    return db;
}

CodeDB classify_extremal_step(const CodeDB& seeds, int target_d, const ClassifyOptions& opts) {
    if (!seeds.complete() && !opts.allow_partial_seeds)
        throw IncompleteSeedsError("seed DB is not flagged complete for the target distance");
    const int n = seeds.n() + 2;
    auto all_entries = seeds.entries();
    std::vector<const DbEntry*> work;
    for (const DbEntry* e : all_entries)
        if (e->d == target_d - 2) work.push_back(e);

    // Partition the seeds, extend and deduplicate per partition, then merge
    // the partition DBs with global deduplication.
    const size_t psize = opts.partition_size > 0 ? static_cast<size_t>(opts.partition_size) : 1;
    const size_t nparts = work.empty() ? 0 : (work.size() + psize - 1) / psize;

    std::function<CodeDB(size_t)> task = [&](size_t p) {
        CodeDB part(n, "both", false);
        size_t lo = p * psize, hi = std::min(work.size(), lo + psize);
        for (size_t i = lo; i < hi; ++i) {
            SelfDualCode seed = entry_code(*work[i]);
            for (const auto& ext : recursive_extend(seed, opts.budget)) {
                std::string tag =
                    "extend:n" + std::to_string(seeds.n()) + "#" + std::to_string(i);
                part.insert(make_entry(ext.code, ext.cert, tag));
            }
        }
        return part;
    };
    auto parts = parallel_map<CodeDB>(nparts, opts.workers, task);

    CodeDB db(n, "both", seeds.complete());
    for (const auto& part : parts)
        for (const DbEntry* e : part.entries()) db.insert(*e);
    return db;
}

CodeDB search_s_extremal_via_shadow(int n, int d, const CodeDB& seeds,
                                    const ClassifyOptions& opts) {
    if (d % 4 != 2)
        throw HypothesisViolatedError(
            "shadow-tracked search needs d = 2 (mod 4) so the subtracted distance is 0 (mod 4)");
    if (seeds.n() != n - 2) throw ShapeMismatchError("seed DB must have length n-2");
    if (!seeds.complete() && !opts.allow_partial_seeds)
        throw IncompleteSeedsError("seed DB is not flagged complete");
    const int s = n / 2 + 4 - 2 * d;
    if (s < 1) throw InvariantError("no s-extremal codes with these parameters");

    CodeDB filtered(seeds.n(), "both", seeds.complete());
    for (const DbEntry* e : seeds.entries())
        if (e->d == d - 2 && e->s && *e->s == s - 1) filtered.insert(*e);

    ClassifyOptions sub = opts;
    sub.allow_partial_seeds = true;
    CodeDB ext = classify_extremal_step(filtered, d, sub);
    CodeDB out(n, "both", seeds.complete());
    for (const DbEntry* e : ext.entries()) {
        if (!e->s) continue;
        if (2 * e->d + *e->s == n / 2 + 4) out.insert(*e);
    }
    return out;
}

CodeDB filter_s_extremal(const CodeDB& db) {
    CodeDB out(db.n(), db.scope(), false);
    for (const DbEntry* e : db.entries()) {
        if (!e->s) continue;
        int lhs = 2 * e->d + *e->s;
        bool ok = lhs == db.n() / 2 + 4 ||
                  (db.n() % 24 == 22 && e->d == extremal_bound(db.n()) && lhs == db.n() / 2 + 8);
        if (ok) out.insert(*e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Covering radius
// ---------------------------------------------------------------------------

CoveringRadiusResult covering_radius(const SelfDualCode& c, const SweepBudget& budget) {
    const int n = c.n(), k = c.k();
    if (k > budget.max_dim)
        throw BudgetExceededError("covering radius needs a 2^(n/2) syndrome table");
    // G is also a parity check matrix; syndrome of e_j = column j.
    std::vector<uint32_t> col(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < k; ++i)
            if (c.gen().row(i).get(j)) col[static_cast<size_t>(j)] |= uint32_t{1} << i;
    const size_t total = size_t{1} << k;
    std::vector<uint8_t> dist(total, 0xff);
    std::vector<uint32_t> frontier{0};
    dist[0] = 0;
    CoveringRadiusResult res;
    res.leader_hist.push_back(1);
    size_t seen = 1;
    int w = 0;
    while (seen < total) {
        std::vector<uint32_t> next;
        for (uint32_t sy : frontier)
            for (int j = 0; j < n; ++j) {
                uint32_t t = sy ^ col[static_cast<size_t>(j)];
                if (dist[t] == 0xff) {
                    dist[t] = static_cast<uint8_t>(w + 1);
                    next.push_back(t);
                }
            }
        ++w;
        seen += next.size();
        res.leader_hist.push_back(next.size());
        frontier = std::move(next);
        if (frontier.empty() && seen < total)
            throw InvariantError("syndrome space not covered; parity data inconsistent");
    }
    res.rho = w;
    return res;
}

std::pair<int, int> covering_radius_bounds(const SelfDualCode& c,
                                           std::optional<int> parent_rho) {
    const int n = c.n(), k = c.k();
    mpz_class half = 1, full = 1;
    half <<= static_cast<unsigned>(k - 1);
    full <<= static_cast<unsigned>(k);
    int lower = 0;
    for (int r = 0;; ++r) {
        mpz_class tot = 0, even = 0, odd = 0, binom;
        for (int i = 0; i <= r; ++i) {
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                         static_cast<unsigned long>(i));
            tot += binom;
            (i % 2 ? odd : even) += binom;
        }
        if (tot >= full && even >= half && odd >= half) {
            lower = r;
            break;
        }
    }
    int upper = c.wenum().distinct_nonzero_weights();
    if (parent_rho) upper = std::min(upper, *parent_rho + 2);
    return {lower, upper};
}

}  // namespace sdc
