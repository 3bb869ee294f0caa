#ifndef SDC_EQUIV_HPP
#define SDC_EQUIV_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdc/genmatrix.hpp"

namespace sdc {

struct SearchBudget {
    uint64_t max_nodes = 20'000'000;
};

// Certificate of the permutation-equivalence class of a code: a total
// canonical representative, the coordinate permutation realizing it, the
// exact automorphism group order and the generators discovered on the way.
// perm[i] is the canonical position of input coordinate i.
struct CanonicalCert {
    GenMatrix canon;
    std::vector<int> perm;
    mpz_class aut_order;
    std::vector<std::vector<int>> aut_gens;

    std::string key() const { return canon.key(); }
};

// Canonical labeling by partition refinement over the incidence structure of
// the small-weight codeword classes, followed by individualization with
// trace- and automorphism-orbit pruning. canon is identical for any two
// permutation-equivalent inputs.
CanonicalCert canonical_form(const GenMatrix& m, const SearchBudget& budget = {});

bool are_equivalent(const GenMatrix& a, const GenMatrix& b, const SearchBudget& budget = {});

// Witness permutation pi with pi(a) = b as row spaces, or nullopt.
std::optional<std::vector<int>> equivalence_witness(const GenMatrix& a, const GenMatrix& b,
                                                    const SearchBudget& budget = {});

mpz_class aut_order(const GenMatrix& m, const SearchBudget& budget = {});

// Applies a coordinate permutation to every row: output bit perm[i] equals
// input bit i.
GenMatrix permute_columns(const GenMatrix& m, const std::vector<int>& perm);

// Exact order of the permutation group generated by gens (Schreier-Sims).
mpz_class permutation_group_order(int n, const std::vector<std::vector<int>>& gens);

}  // namespace sdc

#endif
