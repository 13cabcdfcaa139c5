#pragma once

#include <cstdint>

#include "shiftlab/setops.hpp"

namespace shiftlab {

enum class Objective { shift_product, two_products };

const char* to_string(Objective o);
Objective objective_from_string(const std::string& s);

/// ln|f(A)| / ln|A| (the quantity compared to 11/9); for |A| <= 1 the raw
/// size is reported instead.
struct SearchRecord {
    std::string set_descr;
    Objective objective = Objective::shift_product;
    unsigned long set_size = 0;  // |A|
    unsigned long raw_size = 0;  // |A(A+1)| or |AA| + |(A+1)(A+1)|
    double value = 0;            // exponent (or raw size when |A| <= 1)
    std::uint64_t seed = 0;
    std::string generator;
};

unsigned long objective_size(const FSet& A, Objective o);
double objective_value(const FSet& A, Objective o);

/// Global minimum of the objective over all n-subsets of F_p \ {0}.
/// Guard: C(p-1, n) <= 10^7 candidates. Deterministic tie-break:
/// lexicographically smallest set. `jobs` controls worker parallelism;
/// the result is independent of it.
SearchRecord exhaustive(std::uint64_t p, unsigned n, Objective o, unsigned jobs = 1);

enum class FamilyKind { geometric, arithmetic, subgroup, subgroup_coset };

struct FamilyParams {
    Element start;   // gp: ratio g; ap: first term; subgroup: ignored; coset: representative
    Element step;    // ap only
    unsigned long order = 0;  // requested size n
};

/// subgroup / subgroup_coset require order | p-1 and produce a true
/// multiplicative subgroup (so AA = A); geometric and arithmetic families
/// follow the descriptor grammar.
FSet generate_family(const FieldCtx& ctx, FamilyKind kind, const FamilyParams& params);

/// Finds an element of exact multiplicative order n in F_p (n must divide p-1).
Element element_of_order(const FieldCtx& ctx, unsigned long n);

/// Local search by single-element swaps; deterministic given seed; never
/// returns a record worse than the start.
SearchRecord hill_climb(const FSet& start, Objective o, unsigned steps, std::uint64_t seed);

} // namespace shiftlab
