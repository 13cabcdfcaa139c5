#include "shiftlab/incidence.hpp"

#include <cmath>

namespace shiftlab {

namespace {

LineFamily param_lines(LineKind kind, const FSet& D, const FSet& C) {
    if (!(D.ctx() == C.ctx())) throw CtxMismatch();
    const FieldCtx& ctx = D.ctx();
    LineFamily fam{kind, {}};
    fam.lines.reserve(D.size() * C.size());
    for (const auto& d : D.elems()) {
        if (d.is_zero()) throw ZeroParameter();
        Element inv_d = ctx.inv(d);
        for (const auto& c : C.elems()) {
            if (c.is_zero()) throw ZeroParameter();
            // y = (1/d)(x/c - 1): slope 1/(dc), intercept -1/d
            fam.lines.push_back(Line{ctx.mul(inv_d, ctx.inv(c)), ctx.neg(inv_d)});
        }
    }
    return fam;
}

} // namespace

LineFamily shift_lines(const FSet& D, const FSet& C) {
    return param_lines(LineKind::shift_lines, D, C);
}

LineFamily swapped_lines(const FSet& S, const FSet& C) {
    return param_lines(LineKind::swapped_lines, S, C);
}

LineFamily explicit_lines(const FieldCtx& ctx, std::vector<Line> lines) {
    (void)ctx;
    return LineFamily{LineKind::explicit_lines, std::move(lines)};
}

long long count_incidences(const PointGrid& grid, const LineFamily& L, IncidenceMethod method) {
    const FieldCtx& ctx = grid.X.ctx();
    long long count = 0;
    if (method == IncidenceMethod::bruteforce) {
        for (const auto& line : L.lines)
            for (const auto& x : grid.X.elems())
                for (const auto& y : grid.Y.elems())
                    if (y == ctx.add(ctx.mul(line.slope, x), line.intercept)) ++count;
        return count;
    }
    // hashed: evaluate each line on each x-column, membership test in Y
    for (const auto& line : L.lines)
        for (const auto& x : grid.X.elems())
            if (grid.Y.contains(ctx.add(ctx.mul(line.slope, x), line.intercept))) ++count;
    return count;
}

SdzBound sdz_bound(unsigned long a, unsigned long b, unsigned long l, std::uint64_t p_modulus) {
    if (a < b) std::swap(a, b); // the theorem wants |A| >= |B|
    SdzBound r;
    r.value = sqrtl(static_cast<long double>(a)) *
                  powl(static_cast<long double>(b), 0.75L) *
                  powl(static_cast<long double>(l), 0.75L) +
              static_cast<long double>(l);
    if (p_modulus != 0) {
        r.cond_p = mpz_class(l) * mpz_class(b) <= mpz_class(p_modulus) * mpz_class(p_modulus);
    }
    r.cond_sizes = mpz_class(b) * mpz_class(a) * mpz_class(a) <=
                   mpz_class(l) * mpz_class(l) * mpz_class(l);
    return r;
}

namespace {

void check_zero_free(const FSet& A, const FSet& D, const FSet& C) {
    if (A.contains_zero() || D.contains_zero() || C.contains_zero())
        throw ZeroElement("construction checks require 0 notin A, C, D");
}

} // namespace

bool construction_identity_check(const FSet& A, const FSet& D, const FSet& C,
                                 const DyadicBucket& bucket) {
    check_zero_free(A, D, C);
    PointGrid grid{shifted_product(C, A, A.ctx().one()), bucket.members};
    long long inc = count_incidences(grid, shift_lines(D, C), IncidenceMethod::hashed);
    return inc >= static_cast<long long>(bucket.members.size()) * bucket.tau *
                      static_cast<long long>(C.size());
}

bool swapped_construction_check(const FSet& A, const FSet& D, const FSet& C,
                                const DyadicBucket& bucket) {
    check_zero_free(A, D, C);
    PointGrid grid{shifted_product(C, A, A.ctx().one()), D};
    long long inc = count_incidences(grid, swapped_lines(bucket.members, C), IncidenceMethod::hashed);
    return inc >= static_cast<long long>(bucket.members.size()) * bucket.tau *
                      static_cast<long long>(C.size());
}

} // namespace shiftlab
