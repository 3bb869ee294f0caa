#ifndef SDC_SELFDUAL_HPP
#define SDC_SELFDUAL_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "sdc/genmatrix.hpp"

namespace sdc {

enum class CodeType { type_i, type_ii };

// Validated [n, n/2] self-dual code with cached invariants. Immutable.
class SelfDualCode {
  public:
    // Checks n even, k = n/2, full rank, pairwise/self orthogonality; computes
    // the weight distribution, minimum weight, type and (for Type I) the
    // shadow minimum weight.
    static SelfDualCode validate(const GenMatrix& m, const SweepBudget& budget = {});

    int n() const { return gen_.n(); }
    int k() const { return gen_.k(); }
    const GenMatrix& gen() const { return gen_; }  // rref presentation
    int d() const { return d_; }
    const WeightEnum& wenum() const { return wenum_; }
    CodeType type() const { return type_; }
    bool is_type_ii() const { return type_ == CodeType::type_ii; }
    // Shadow minimum weight; absent for Type II.
    std::optional<int> s() const { return s_; }

  private:
    SelfDualCode() = default;
    GenMatrix gen_;
    WeightEnum wenum_;
    int d_ = 0;
    CodeType type_ = CodeType::type_i;
    std::optional<int> s_;
};

// Shadow decomposition of a Type I code: C0 the doubly-even subcode, coset
// representatives x in C\C0, y in C0^perp\C, x+y, all chosen as the
// lexicographically first valid codeword. For Type II codes the convention
// S = C applies and shadow_is_code is set instead (no decomposition).
struct ShadowDecomp {
    GenMatrix c0;
    BitWord x, y, xy;
    WeightEnum shadow_wenum;
    bool shadow_is_code = false;
};

// Throws TypeIIInputError on Type II input (use shadow_or_code for the
// uniform convention).
ShadowDecomp doubly_even_subcode(const SelfDualCode& c, const SweepBudget& budget = {});
ShadowDecomp shadow_or_code(const SelfDualCode& c, const SweepBudget& budget = {});

// Exact shadow coefficients recomputed from the decomposition by a direct
// sweep over S = y + C.
WeightEnum shadow_weight_distribution(const ShadowDecomp& sd, const SweepBudget& budget = {});

// Gleason expansion coefficients c_0..c_{floor(n/8)} of a Type I enumerator.
struct GleasonCoeffs {
    std::vector<mpq_class> c;
    int n = 0;
};

// Solves the coefficient-matching linear system exactly; the residual must
// vanish, otherwise the input is not in the Gleason span.
GleasonCoeffs gleason_solve(const WeightEnum& w, int n);

// Expands the shadow transform of the Gleason expansion. Negative or
// fractional coefficients are legitimate output (infeasible enumerators).
std::vector<mpq_class> shadow_from_gleason(const GleasonCoeffs& g, int n);

bool rational_series_equals(const std::vector<mpq_class>& s, const WeightEnum& w);

// Largest d allowed for a self-dual code of length n.
int extremal_bound(int n);

// 2d+s = 4+n/2, or the exceptional 8+n/2 case when n = 22 (mod 24) and
// d = 4[n/24]+6. False for Type II.
bool s_extremal_check(const SelfDualCode& c);

// Number of distinct self-dual codes of length n: the all-codes product
// Prod_{i=1}^{n/2-1}(2^i+1), or the doubly-even product
// Prod_{i=0}^{n/2-2}(2^i+1) (requires 8 | n).
enum class MassKind { all, type_ii };
mpz_class mass_total(int n, MassKind kind = MassKind::all);

}  // namespace sdc

#endif
