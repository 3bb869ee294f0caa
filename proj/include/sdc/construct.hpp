#ifndef SDC_CONSTRUCT_HPP
#define SDC_CONSTRUCT_HPP

#include <vector>

#include "sdc/equiv.hpp"
#include "sdc/selfdual.hpp"

namespace sdc {

// Subtraction of (11) on columns i and j: keep the codewords that agree on
// the two columns, delete the columns. [2n+2, n+1, d+2] -> [2n, n, >= d].
// Requires d(c) >= 3 so the columns are independent.
SelfDualCode subtract_11(const SelfDualCode& c, int i, int j);

struct ShadowTracked {
    SelfDualCode code;
    int i = -1, j = -1;
};

// Shadow-weight-tracked subtraction: for a Type I [4n+2, 2n+1, d+2] code with
// d = 0 (mod 4), d != 0 and shadow weight s >= 3, picks the coordinate pair
// witnessed by a minimal shadow vector y = (y'10) and a minimum-weight
// codeword x = (x'11), and returns the subtracted code, which has minimum
// weight exactly d and shadow weight exactly s-1 (checked on every call).
ShadowTracked subtract_11_shadow_tracked(const SelfDualCode& c);

struct Extension {
    SelfDualCode code;
    CanonicalCert cert;
};

// Reverse of the subtraction: every [n+2, n/2+1, d+2] self-dual code that
// subtracts back to c on some column pair, deduplicated by canonical form
// and sorted by it. The two fresh columns are placed first.
std::vector<Extension> recursive_extend(const SelfDualCode& c, const SearchBudget& budget = {});

// Building-up: two fresh columns in front, first row (10|x), remaining rows
// (y_i y_i | r_i) with y_i = x.r_i. x must have odd weight.
SelfDualCode build_up(const SelfDualCode& c, const BitWord& x);

// Two-column extension with per-row tags a_1..a_{n/2-1} (last row untagged),
// completed by every even coset of weight > 2; any minimum weight.
std::vector<Extension> harada_munemasa_extend(const SelfDualCode& c, const std::vector<bool>& a,
                                              const SearchBudget& budget = {});

// Dimension of the subcode spanned by the minimum-weight codewords; the
// recursive extension enumerates 2^(n/2-k) sign vectors, k this dimension.
int weight_d_subcode_dim(const SelfDualCode& c);

}  // namespace sdc

#endif
