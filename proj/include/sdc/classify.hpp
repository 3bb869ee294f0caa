#ifndef SDC_CLASSIFY_HPP
#define SDC_CLASSIFY_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdc/construct.hpp"
#include "sdc/equiv.hpp"
#include "sdc/selfdual.hpp"

namespace sdc {

struct DbEntry {
    GenMatrix canon;  // canonical generator matrix, key of the class
    int n = 0;
    int d = 0;
    std::optional<int> s;  // absent exactly for Type II
    mpz_class aut;
    std::string prov;

    CodeType type() const { return s ? CodeType::type_i : CodeType::type_ii; }
};

// Persisted, deduplicated set of inequivalent codes. Entries are kept sorted
// by canonical key, so iteration order, files and reports are deterministic.
class CodeDB {
  public:
    CodeDB() = default;
    CodeDB(int n, std::string scope, bool complete)
        : n_(n), scope_(std::move(scope)), complete_(complete) {}

    int n() const { return n_; }
    const std::string& scope() const { return scope_; }  // "I", "II" or "both"
    bool complete() const { return complete_; }
    void set_complete(bool v) { complete_ = v; }
    void set_scope(std::string s) { scope_ = std::move(s); }

    size_t size() const { return entries_.size(); }
    bool insert(DbEntry e);  // false if the class is already present
    bool contains(const std::string& canon_key) const;
    const DbEntry* find(const std::string& canon_key) const;

    // ascending canonical key
    std::vector<const DbEntry*> entries() const;

    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;
    static CodeDB load(std::istream& is);
    static CodeDB load_file(const std::string& path);

  private:
    int n_ = 0;
    std::string scope_ = "both";
    bool complete_ = false;
    std::map<std::string, DbEntry> entries_;
};

struct ClassifyOptions {
    int workers = 1;
    int partition_size = 1000;
    SearchBudget budget{};
    int max_n = 20;                   // refuse longer chains unless raised explicitly
    bool allow_partial_seeds = false; // run extension steps on partial seed sets
};

// Complete classification of all self-dual codes of length n: d > 2 classes
// by building-up over the complete length n-2 classification, d = 2 classes
// as e2 + D; deduplicated by canonical form; completeness certified by the
// exact mass audit.
CodeDB classify_all(int n, const ClassifyOptions& opts = {});

// One chain step reusing an existing complete DB at length n-2.
CodeDB classify_step(const CodeDB& seeds, const ClassifyOptions& opts = {});

// Recursive-extension step: extends every seed of minimum weight target_d-2,
// returning the deduplicated [n+2, n/2+1, target_d] classes. Complete when
// the seed DB is complete for minimum weight >= target_d - 2. partition_size
// controls the partition-then-merge deduplication; the result is identical
// for any partition size or worker count.
CodeDB classify_extremal_step(const CodeDB& seeds, int target_d, const ClassifyOptions& opts = {});

// Shadow-filtered s-extremal search at (n, d): seeds of length n-2 are
// filtered to minimum weight d-2 and shadow weight s-1 (s = n/2+4-2d), then
// recursively extended and filtered by the s-extremal identity.
CodeDB search_s_extremal_via_shadow(int n, int d, const CodeDB& seeds,
                                    const ClassifyOptions& opts = {});

// Entries satisfying 2d+s = n/2+4 (or the exceptional bound).
CodeDB filter_s_extremal(const CodeDB& db);

struct CoveringRadiusResult {
    int rho = 0;
    std::vector<uint64_t> leader_hist;  // index = coset leader weight
};

// Exact covering radius by breadth-first closure over the 2^(n/2) syndromes.
CoveringRadiusResult covering_radius(const SelfDualCode& c, const SweepBudget& budget = {});

// Sphere-covering lower bound (parity-refined) and Delsarte upper bound
// (distinct nonzero weights), the latter tightened to parent_rho + 2 when a
// building-up parent is known.
std::pair<int, int> covering_radius_bounds(const SelfDualCode& c,
                                           std::optional<int> parent_rho = {});

enum class AuditScope { all, type_i, type_ii };

struct MassAudit {
    mpq_class found;     // sum of 1/|Aut| over the audited entries
    mpq_class expected;  // N(n)/n! for the audited scope
    bool exact() const { return found == expected; }
    mpq_class deficit() const { return expected - found; }
};

MassAudit mass_audit(const CodeDB& db, AuditScope scope = AuditScope::all);

// Rebuilds the validated code of a DB entry.
SelfDualCode entry_code(const DbEntry& e);

}  // namespace sdc

#endif
