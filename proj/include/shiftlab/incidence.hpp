#pragma once

#include "shiftlab/energy.hpp"

namespace shiftlab {

/// A line y = slope * x + intercept, stored in canonical slope/intercept form.
struct Line {
    Element slope;
    Element intercept;
    bool operator==(const Line& o) const { return slope == o.slope && intercept == o.intercept; }
    bool operator<(const Line& o) const {
        if (!(slope == o.slope)) return slope < o.slope;
        return intercept < o.intercept;
    }
};

enum class LineKind { shift_lines, swapped_lines, explicit_lines };

/// A family of lines. The shift family is { y = (1/d)(x/c - 1) : d in D, c in C };
/// the swapped family is the same formula with the first parameter drawn from a
/// dyadic bucket instead of D. Distinct parameter pairs give distinct lines.
struct LineFamily {
    LineKind kind;
    std::vector<Line> lines;
};

/// Requires 0 notin D, C (slope and intercept need 1/d, 1/(dc)).
LineFamily shift_lines(const FSet& D, const FSet& C);
LineFamily swapped_lines(const FSet& S, const FSet& C);
LineFamily explicit_lines(const FieldCtx& ctx, std::vector<Line> lines);

/// The Cartesian grid X x Y.
struct PointGrid {
    FSet X;
    FSet Y;
    std::size_t size() const { return X.size() * Y.size(); }
};

enum class IncidenceMethod { bruteforce, hashed };

/// Exact number of (point, line) pairs with the point on the line.
long long count_incidences(const PointGrid& grid, const LineFamily& L, IncidenceMethod method);

struct SdzBound {
    long double value = 0;    // |A|^{1/2} |B|^{3/4} |L|^{3/4} + |L|, |A| >= |B| orientation
    bool cond_p = true;       // |L||B| <= p^2 (constant 1; vacuous in rational mode)
    bool cond_sizes = true;   // |B||A|^2 <= |L|^3
};

/// Evaluates the incidence bound for given sizes; p_modulus = 0 means
/// characteristic zero. The smaller of a, b takes the 3/4 power.
SdzBound sdz_bound(unsigned long a, unsigned long b, unsigned long l, std::uint64_t p_modulus);

/// Grid C(A+1) x S_tau against the lines from (D, C):
/// incidences >= |S_tau| * tau * |C|. Holds unconditionally.
bool construction_identity_check(const FSet& A, const FSet& D, const FSet& C,
                                 const DyadicBucket& bucket);

/// Same statement with the roles of D and S_tau exchanged
/// (grid C(A+1) x D, lines from (S_tau, C)).
bool swapped_construction_check(const FSet& A, const FSet& D, const FSet& C,
                                const DyadicBucket& bucket);

} // namespace shiftlab
