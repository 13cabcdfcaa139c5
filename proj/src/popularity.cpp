#include "shiftlab/popularity.hpp"

#include <cmath>

namespace shiftlab {

PopularityDecomposition popular_decompose(const FSet& A, const FSet& B) {
    if (A.size() < 3) throw SetTooSmall("popular_decompose requires |A| >= 3");
    if (A.contains_zero() || B.contains_zero())
        throw ZeroElement("popular_decompose requires 0 notin A u B");

    const FieldCtx& ctx = A.ctx();
    RepHistogram rab = rep_function(A, B, BinOp::product);
    const long double lnA = logl(static_cast<long double>(A.size()));
    const long double thr_P = static_cast<long double>(A.size()) * static_cast<long double>(B.size()) /
                              (lnA * static_cast<long double>(rab.counts.size()));

    std::vector<Element> popular;
    long long covered = 0, uncovered = 0;
    for (const auto& [x, c] : rab.counts) {
        if (static_cast<long double>(c) >= thr_P) {
            popular.push_back(x);
            covered += c;
        } else {
            uncovered += c;
        }
    }
    FSet P(ctx, std::move(popular));

    // A' rows: count >= (2/3)|B|, compared as 3*count >= 2*|B| exactly
    std::vector<Element> aprime;
    for (const auto& a : A.elems()) {
        long long row = 0;
        for (const auto& b : B.elems())
            if (P.contains(ctx.mul(a, b))) ++row;
        if (3 * row >= 2 * static_cast<long long>(B.size())) aprime.push_back(a);
    }

    PopularityDecomposition d{std::move(P), FSet(ctx, std::move(aprime)),
                              thr_P, 2.0L * static_cast<long double>(B.size()) / 3.0L,
                              covered, uncovered};
    return d;
}

long long intersection_bound_check(const FSet& A_prime, const FSet& B, const FSet& P) {
    const FieldCtx& ctx = A_prime.ctx();
    // row sets as bitmasks over B's index space
    std::vector<std::vector<bool>> rows;
    rows.reserve(A_prime.size());
    for (const auto& a : A_prime.elems()) {
        std::vector<bool> row(B.size());
        for (std::size_t j = 0; j < B.size(); ++j)
            row[j] = P.contains(ctx.mul(a, B.elems()[j]));
        rows.push_back(std::move(row));
    }
    long long best = static_cast<long long>(B.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            long long inter = 0;
            for (std::size_t k = 0; k < B.size(); ++k)
                if (rows[i][k] && rows[j][k]) ++inter;
            if (inter < best) best = inter;
        }
    }
    return best;
}

long double ratio_energy_43(const FSet& X) {
    return energy_moment(rep_function(X, X, BinOp::ratio), Moment{4, 3});
}

RefineResult refine_43(const FSet& A, const FSet& B, bool force) {
    const long double e3 = expl(3.0L);
    if (static_cast<long double>(A.size()) <= e3 && !force)
        throw SetTooSmall("refine_43: |A| <= e^3 is outside the guarantee regime; pass force");

    RefineResult res{A, 0, {}, static_cast<long double>(A.size()) > e3};
    const int max_iter = static_cast<int>(ceill(logl(static_cast<long double>(A.size()))));

    FSet cur = A;
    for (int i = 0;; ++i) {
        long double e_cur = ratio_energy_43(cur);
        res.energy_trace.push_back(e_cur);
        if (cur.size() < 3) {
            // degenerate: A' = A, stopping condition immediate
            res.A1 = cur;
            res.iterations = i;
            return res;
        }
        PopularityDecomposition d = popular_decompose(cur, B);
        long double e_next = ratio_energy_43(d.A_prime);
        if (e_next >= (e_cur / 4.0L) * (1.0L - 1e-9L)) {
            res.A1 = cur;
            res.iterations = i;
            return res;
        }
        if (i >= max_iter) {
            // the contradiction branch of the argument; reaching it means an
            // exact step elsewhere is broken
            throw ExactStepViolation("refine_43 failed to stop within ceil(ln|A|) iterations");
        }
        cur = d.A_prime;
    }
}

} // namespace shiftlab
