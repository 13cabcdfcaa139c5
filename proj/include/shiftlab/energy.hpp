#pragma once

#include <map>
#include <vector>

#include "shiftlab/setops.hpp"

namespace shiftlab {

/// A rational moment exponent n = num/den, n >= 1.
struct Moment {
    long num = 1;
    long den = 1;
    bool is_integer() const { return num % den == 0; }
    long as_integer() const { return num / den; }
    long double as_real() const { return static_cast<long double>(num) / den; }
};

/// Representation function of X op Y: counts(v) = |{(x,y) : x op y = v}|.
/// Sum of counts is |X||Y| whenever op is defined on all pairs.
struct RepHistogram {
    FieldCtx ctx;
    BinOp source_op;
    std::map<Element, long long> counts;
    long long total_pairs = 0;

    long long max_count() const;
};

RepHistogram rep_function(const FSet& X, const FSet& Y, BinOp op);

/// Representation function with a weighted (multiset) left source: each key k
/// of `src` counts with multiplicity src.counts(k). Realizes composite
/// sources such as (BA)/A, whose counts are triple counts.
RepHistogram rep_from_hist(const RepHistogram& src, const FSet& Y, BinOp op);

/// E_n(h) = sum_v counts(v)^n, exact, for integer n >= 1.
mpz_class energy_moment_int(const RepHistogram& h, long n);

/// E_n(h) for rational n >= 1; compensated long double summation.
/// Relative error comfortably below 1e-9 at desk scale.
long double energy_moment(const RepHistogram& h, const Moment& n);

/// Independent oracle: counts 2n-tuples (x_1..x_n, y_1..y_n) with
/// x_1 op y_1 = ... = x_n op y_n by direct enumeration over pairs.
/// Guard: (|X||Y|)^n <= 10^8.
mpz_class energy_bruteforce(const FSet& X, const FSet& Y, BinOp op, long n);

/// One dyadic level of a representation histogram: every member v has
/// tau <= counts(v) < 2*tau.
struct DyadicBucket {
    long long tau = 1;
    FSet members;
    Moment weight_exponent;
    long double weight = 0; // |members| * tau^n

    DyadicBucket(long long t, FSet m, Moment n);
};

/// Partition of the support of h into dyadic levels, ascending tau.
std::vector<DyadicBucket> dyadic_buckets(const RepHistogram& h, Moment weight_exponent = {1, 1});

/// The bucket maximizing |S_tau| * tau^n; ties break toward smaller tau.
/// Guarantees |S_tau| * (2*tau)^n >= E_n(h) / (floor(log2 r_max) + 1):
/// counts inside a level run up to 2*tau, so the upper-edge factor 2^n is
/// needed for the pigeonhole bound to be a theorem.
DyadicBucket richest_bucket(const RepHistogram& h, const Moment& n);

/// Number of dyadic levels a histogram can occupy: floor(log2 r_max) + 1.
int pigeonhole_levels(const RepHistogram& h);

} // namespace shiftlab
