#pragma once

#include <array>

#include "shiftlab/incidence.hpp"
#include "shiftlab/popularity.hpp"

namespace shiftlab {

/// Both sides of one theorem instance. Exact inequalities in the underlying
/// argument are hard-asserted by the verifiers; inequalities that hide
/// absolute constants and log powers are never pass/fail and only surface
/// here as a ratio.
struct VerificationReport {
    std::string theorem_id;
    std::string lhs;        // decimal string, exact when the quantity is integral
    std::string rhs;
    long double lhs_value = 0;
    long double rhs_value = 0;
    long double ratio = 0;  // lhs / rhs
    std::vector<std::pair<std::string, bool>> flags;
    std::vector<std::string> notes;
    std::vector<VerificationReport> sub_reports;
};

/// One step of a proof trace. kind "exact" steps must hold (holds == true or
/// an ExactStepViolation was thrown); kind "ratio" steps report lhs/rhs with
/// the hidden constant taken as 1 and the log power listed in log_power.
struct TraceStep {
    std::string name;
    std::string kind; // "exact" | "ratio" | "identity"
    long double lhs = 0;
    long double rhs = 0;
    long double ratio = 0;
    bool holds = true;
    int log_power = 0;
};

struct ProofTrace {
    std::vector<std::pair<std::string, std::string>> quantities; // name -> value
    std::vector<TraceStep> steps;
};

/// E_4(A,D) against min{ |C(A+1)|^2 |D|^3, |C(A+1)|^3 |D|^2 } / |C|.
VerificationReport verify_e4(const FSet& A, const FSet& C, const FSet& D);

/// E_2(A,D) against |C(A+1)|^{3/2} |D|^{3/2} / |C|^{1/2}.
VerificationReport verify_e2(const FSet& A, const FSet& C, const FSet& D);

/// |AB|^8 |C(A+1)|^2 |D(B-1)|^8 against |B|^13 |A|^5 |C|^3 |D|.
VerificationReport verify_shift(const FSet& A, const FSet& B, const FSet& C, const FSet& D);

struct CorollaryReport {
    VerificationReport shift_product;  // |A(A+1)| vs |A|^{11/9}
    VerificationReport two_products;   // |AA| + |(A+1)(A+1)| vs |A|^{11/9}
};

VerificationReport verify_corollary_shift_product(const FSet& A);
VerificationReport verify_corollary_two_products(const FSet& A);
CorollaryReport verify_corollary(const FSet& A);

/// N = sum over (a,a') in A'^2 with a/a' in Q of |{b : ab, a'b in P}|^2.
/// Hard-asserts 9N >= |B|^2 |Q| Delta (Delta = the bucket's tau).
mpz_class trivial_solution_count(const FSet& A_prime, const FSet& B,
                                 const DyadicBucket& Q, const FSet& P);

struct EquivClassTable {
    /// (representative quadruple (a, a', b, b'), class size), condition-satisfying
    /// classes only.
    std::vector<std::pair<std::array<Element, 4>, long long>> classes;
    mpz_class satisfying_quadruples = 0;     // sum of class sizes
    mpz_class sum_sq_satisfying = 0;         // sum |class|^2 over satisfying classes
    mpz_class sum_sq_all = 0;                // sum |class|^2 over every class of A^2 x B^2
    long long class_count = 0;               // |X|
};

/// Partitions condition-satisfying quadruples (a/a' in Q; ab, a'b, ab', a'b'
/// in P) of A^2 x B^2 into classes of the lambda-scaling action, and asserts
/// that condition membership is constant on every class. Pass Q = A/A and
/// P = AB to table the full quadruple space.
EquivClassTable equiv_classes(const FSet& A, const FSet& B, const FSet& Q, const FSet& P);

/// Equation-style check: sum |class|^2 over the full table is at most
/// sum_x r_{A/A}(x)^2 r_{B/B}(x)^2. Returns true always.
bool equiv_energy_inequality(const FSet& A, const FSet& B, const EquivClassTable& full_table);

/// The full chain behind the shift theorem on one instance: refinement,
/// popular decomposition, the rich bucket Q, N, |X|, the dyadic chains
/// R1/R2 and S1/S2, every Cauchy-Schwarz step, and the final assembly.
/// Exact steps are hard-asserted; hidden-constant steps become ratio rows.
ProofTrace proof_trace_shift(const FSet& A, const FSet& B, const FSet& C, const FSet& D,
                             bool force = false);

} // namespace shiftlab
