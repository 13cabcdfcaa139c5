#pragma once

#include "shiftlab/energy.hpp"

namespace shiftlab {

/// Output of the popular product-set decomposition:
///   P        products with representation count >= |A||B| / (ln|A| * |AB|)
///   A_prime  elements of A whose row covers >= 2/3 of B inside P
struct PopularityDecomposition {
    FSet P;
    FSet A_prime;
    long double threshold_P = 0;   // |A||B| / (ln|A| * |AB|)
    long double threshold_A = 0;   // (2/3)|B|
    long long covered_pairs = 0;   // |{(a,b) : ab in P}|
    long long uncovered_pairs = 0; // |{(a,b) : ab notin P}|
};

/// Requires |A| >= 3 (so ln|A| > 1) and 0 notin A u B.
/// Threshold comparisons: exact integer count on the left, long double
/// threshold on the right; exact ties count as popular.
PopularityDecomposition popular_decompose(const FSet& A, const FSet& B);

/// min over (a,a') in A_prime^2 of |{b in B : ab in P and a'b in P}|.
/// Guaranteed >= |B|/3 when the inputs come from popular_decompose.
long long intersection_bound_check(const FSet& A_prime, const FSet& B, const FSet& P);

struct RefineResult {
    FSet A1;
    int iterations;
    std::vector<long double> energy_trace; // E_{4/3}(A_i) per step
    bool guaranteed;                       // false when run with force on a small set
};

/// Iterates A_{i+1} = (A_i)' until E_{4/3}((A_i)') >= E_{4/3}(A_i)/4
/// (relative tolerance 1e-9), or until ceil(ln|A|) iterations elapse.
/// The guarantee regime requires |A| >= 21; pass force=true below that.
RefineResult refine_43(const FSet& A, const FSet& B, bool force = false);

/// E_{4/3} of the ratio self-energy of X, the quantity driven by refine_43.
long double ratio_energy_43(const FSet& X);

} // namespace shiftlab
