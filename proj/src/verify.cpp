#include "shiftlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace shiftlab {

namespace {

long double ld(const mpz_class& z) {
    return strtold(z.get_str().c_str(), nullptr);
}

// gmpxx has no long long constructor; long is 64-bit on every target we build
static_assert(sizeof(long) == sizeof(long long));
mpz_class zll(long long v) { return mpz_class(static_cast<long>(v)); }

mpz_class zpow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class zsize(const FSet& s) { return mpz_class(static_cast<unsigned long>(s.size())); }

FSet strip_zero(const FSet& s, bool& had_zero) {
    if (!s.contains_zero()) return s;
    had_zero = true;
    std::vector<Element> out;
    for (const auto& e : s.elems())
        if (!e.is_zero()) out.push_back(e);
    return FSet(s.ctx(), std::move(out));
}

long double ratio_of(long double lhs, long double rhs) {
    return rhs == 0 ? 0 : lhs / rhs;
}

} // namespace

VerificationReport verify_e4(const FSet& A, const FSet& C, const FSet& D) {
    VerificationReport r;
    r.theorem_id = "e4_shift_bound";
    bool had_zero = false;
    FSet a = strip_zero(A, had_zero), c = strip_zero(C, had_zero), d = strip_zero(D, had_zero);
    if (had_zero) r.notes.push_back("zero elements stripped from A/C/D before evaluation");

    mpz_class e4 = energy_moment_int(rep_function(a, d, BinOp::ratio), 4);
    FSet ca1 = shifted_product(c, a, a.ctx().one());
    mpz_class za = zsize(a), zc = zsize(c), zd = zsize(d), zca1 = zsize(ca1);

    mpq_class bound1(zpow(zca1, 2) * zpow(zd, 3), zc);
    mpq_class bound2(zpow(zca1, 3) * zpow(zd, 2), zc);
    bound1.canonicalize();
    bound2.canonicalize();
    mpq_class rhs = std::min(bound1, bound2);

    r.lhs = e4.get_str();
    r.rhs = rhs.get_str();
    r.lhs_value = ld(e4);
    r.rhs_value = ld(rhs.get_num()) / ld(rhs.get_den());
    r.ratio = ratio_of(r.lhs_value, r.rhs_value);
    r.flags.emplace_back("|A|^2|C(A+1)| <= |D||C|^3", za * za * zca1 <= zd * zpow(zc, 3));
    r.flags.emplace_back("|A||C(A+1)|^2 <= |D|^2|C|^3", za * zca1 * zca1 <= zd * zd * zpow(zc, 3));
    bool pc = true;
    if (a.ctx().is_prime_mode()) {
        mpz_class p(a.ctx().modulus());
        pc = za * zc * zd * zd <= p * p;
    }
    r.flags.emplace_back("|A||C||D|^2 <= p^2", pc);
    return r;
}

VerificationReport verify_e2(const FSet& A, const FSet& C, const FSet& D) {
    VerificationReport r;
    r.theorem_id = "e2_shift_bound";
    bool had_zero = false;
    FSet a = strip_zero(A, had_zero), c = strip_zero(C, had_zero), d = strip_zero(D, had_zero);
    if (had_zero) r.notes.push_back("zero elements stripped from A/C/D before evaluation");

    mpz_class e2 = energy_moment_int(rep_function(a, d, BinOp::ratio), 2);
    FSet ca1 = shifted_product(c, a, a.ctx().one());
    mpz_class za = zsize(a), zc = zsize(c), zd = zsize(d), zca1 = zsize(ca1);

    long double rhs = powl(ld(zca1), 1.5L) * powl(ld(zd), 1.5L) / sqrtl(ld(zc));
    r.lhs = e2.get_str();
    char buf[64];
    snprintf(buf, sizeof buf, "%.9Lg", rhs);
    r.rhs = buf;
    r.lhs_value = ld(e2);
    r.rhs_value = rhs;
    r.ratio = ratio_of(r.lhs_value, r.rhs_value);
    r.flags.emplace_back("|A|^2|C(A+1)| <= |D||C|^3", za * za * zca1 <= zd * zpow(zc, 3));
    r.flags.emplace_back("|A||C(A+1)|^2 <= |D|^2|C|^3", za * zca1 * zca1 <= zd * zd * zpow(zc, 3));
    bool pc = true;
    if (a.ctx().is_prime_mode()) {
        mpz_class p(a.ctx().modulus());
        pc = za * zc * zd * std::min(zc, zd) <= p * p;
    }
    r.flags.emplace_back("|A||C||D|min{|C|,|D|} <= p^2", pc);
    return r;
}

VerificationReport verify_shift(const FSet& A, const FSet& B, const FSet& C, const FSet& D) {
    VerificationReport r;
    r.theorem_id = "shift_theorem";
    const FieldCtx& ctx = A.ctx();
    if (A.contains_zero() || B.contains_zero() || C.contains_zero() || D.contains_zero())
        r.notes.push_back("zero element present; sizes computed as-is");

    FSet ab = combine(A, B, BinOp::product);
    FSet ca1 = shifted_product(C, A, ctx.one());
    FSet db1 = shifted_product(D, B, ctx.from_int(-1));
    mpz_class za = zsize(A), zb = zsize(B), zc = zsize(C), zd = zsize(D);
    mpz_class zab = zsize(ab), zca1 = zsize(ca1), zdb1 = zsize(db1);

    mpz_class lhs = zpow(zab, 8) * zpow(zca1, 2) * zpow(zdb1, 8);
    mpz_class rhs = zpow(zb, 13) * zpow(za, 5) * zpow(zc, 3) * zd;
    r.lhs = lhs.get_str();
    r.rhs = rhs.get_str();
    r.lhs_value = ld(lhs);
    r.rhs_value = ld(rhs);
    r.ratio = ratio_of(r.lhs_value, r.rhs_value);
    r.flags.emplace_back("|C(A+1)||A| <= |C|^3", zca1 * za <= zpow(zc, 3));
    r.flags.emplace_back("|C(A+1)|^2 <= |A||C|^3", zca1 * zca1 <= za * zpow(zc, 3));
    r.flags.emplace_back("|B| <= |D|", zb <= zd);
    bool guard = ctx.char_guard(A.size(), 1, 4) && ctx.char_guard(B.size(), 1, 4) &&
                 ctx.char_guard(C.size(), 1, 4) && ctx.char_guard(D.size(), 1, 4);
    r.flags.emplace_back("|A|,|B|,|C|,|D| < p^{1/4}", guard);
    return r;
}

VerificationReport verify_corollary_shift_product(const FSet& A) {
    VerificationReport r;
    r.theorem_id = "corollary_shift_product";
    const FieldCtx& ctx = A.ctx();
    FSet a1 = shift(A, ctx.one());
    FSet aa1 = combine(A, a1, BinOp::product);
    if (aa1.size() < A.size())
        throw ExactStepViolation("|A(A+1)| >= |A| violated");
    long double lhs = static_cast<long double>(aa1.size());
    long double rhs = powl(static_cast<long double>(A.size()), 11.0L / 9.0L);
    r.lhs = std::to_string(aa1.size());
    char buf[64];
    snprintf(buf, sizeof buf, "%.9Lg", rhs);
    r.rhs = buf;
    r.lhs_value = lhs;
    r.rhs_value = rhs;
    r.ratio = ratio_of(lhs, rhs);
    r.flags.emplace_back("|A| < p^{1/4}", ctx.char_guard(A.size(), 1, 4));
    r.sub_reports.push_back(verify_shift(A, a1, A, a1));
    return r;
}

VerificationReport verify_corollary_two_products(const FSet& A) {
    VerificationReport r;
    r.theorem_id = "corollary_two_products";
    const FieldCtx& ctx = A.ctx();
    FSet a1 = shift(A, ctx.one());
    FSet aa = combine(A, A, BinOp::product);
    FSet a1a1 = combine(a1, a1, BinOp::product);
    unsigned long lhs_n = aa.size() + a1a1.size();
    long double rhs = powl(static_cast<long double>(A.size()), 11.0L / 9.0L);
    r.lhs = std::to_string(lhs_n);
    char buf[64];
    snprintf(buf, sizeof buf, "%.9Lg", rhs);
    r.rhs = buf;
    r.lhs_value = static_cast<long double>(lhs_n);
    r.rhs_value = rhs;
    r.ratio = ratio_of(r.lhs_value, rhs);
    r.flags.emplace_back("|A| < p^{1/4}", ctx.char_guard(A.size(), 1, 4));
    r.sub_reports.push_back(verify_shift(A, dilate(A, ctx.from_int(-1)), a1, a1));
    return r;
}

CorollaryReport verify_corollary(const FSet& A) {
    return CorollaryReport{verify_corollary_shift_product(A), verify_corollary_two_products(A)};
}

mpz_class trivial_solution_count(const FSet& A_prime, const FSet& B,
                                 const DyadicBucket& Q, const FSet& P) {
    const FieldCtx& ctx = A_prime.ctx();
    // per-a membership rows over B
    std::vector<std::vector<bool>> rows(A_prime.size(), std::vector<bool>(B.size()));
    for (std::size_t i = 0; i < A_prime.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            rows[i][j] = P.contains(ctx.mul(A_prime.elems()[i], B.elems()[j]));

    mpz_class n = 0;
    for (std::size_t i = 0; i < A_prime.size(); ++i) {
        for (std::size_t j = 0; j < A_prime.size(); ++j) {
            if (!Q.members.contains(ctx.div(A_prime.elems()[i], A_prime.elems()[j]))) continue;
            long long inter = 0;
            for (std::size_t k = 0; k < B.size(); ++k)
                if (rows[i][k] && rows[j][k]) ++inter;
            n += zll(inter) * zll(inter);
        }
    }
    mpz_class zb(static_cast<unsigned long>(B.size()));
    mpz_class zq(static_cast<unsigned long>(Q.members.size()));
    if (9 * n < zb * zb * zq * zll(Q.tau))
        throw ExactStepViolation("N >= (1/9)|B|^2|Q|Delta violated");
    return n;
}

EquivClassTable equiv_classes(const FSet& A, const FSet& B, const FSet& Q, const FSet& P) {
    const FieldCtx& ctx = A.ctx();
    if (A.contains_zero() || B.contains_zero())
        throw ZeroElement("equiv_classes requires 0 notin A, B");
    double quads = std::pow(static_cast<double>(A.size()), 2) *
                   std::pow(static_cast<double>(B.size()), 2);
    if (quads > 1e8) throw TooLarge("equiv_classes: |A|^2|B|^2 exceeds 10^8 quadruples");

    // The invariant key (ab, a'b, ab') determines the lambda-orbit: two
    // quadruples share it iff one is a lambda-scaling of the other.
    struct Agg {
        long long size = 0;
        long long satisfying = 0;
        std::array<Element, 4> rep;
    };
    std::map<std::array<Element, 3>, Agg> classes;

    for (const auto& a : A.elems()) {
        for (const auto& ap : A.elems()) {
            Element q = ctx.div(a, ap);
            bool q_ok = Q.contains(q);
            for (const auto& b : B.elems()) {
                Element ab = ctx.mul(a, b);
                Element apb = ctx.mul(ap, b);
                bool left_ok = q_ok && P.contains(ab) && P.contains(apb);
                for (const auto& bp : B.elems()) {
                    Element abp = ctx.mul(a, bp);
                    auto& agg = classes[{ab, apb, abp}];
                    if (agg.size == 0) agg.rep = {a, ap, b, bp};
                    ++agg.size;
                    if (left_ok && P.contains(abp) && P.contains(ctx.mul(ap, bp)))
                        ++agg.satisfying;
                }
            }
        }
    }

    EquivClassTable t;
    for (auto& [key, agg] : classes) {
        if (agg.satisfying != 0 && agg.satisfying != agg.size)
            throw ExactStepViolation("condition membership not constant on an equivalence class");
        t.sum_sq_all += zll(agg.size) * zll(agg.size);
        if (agg.satisfying > 0) {
            t.classes.emplace_back(agg.rep, agg.size);
            t.satisfying_quadruples += zll(agg.size);
            t.sum_sq_satisfying += zll(agg.size) * zll(agg.size);
            ++t.class_count;
        }
    }
    return t;
}

bool equiv_energy_inequality(const FSet& A, const FSet& B, const EquivClassTable& full_table) {
    RepHistogram ra = rep_function(A, A, BinOp::ratio);
    RepHistogram rb = rep_function(B, B, BinOp::ratio);
    mpz_class rhs = 0;
    for (const auto& [x, ca] : ra.counts) {
        auto it = rb.counts.find(x);
        if (it == rb.counts.end()) continue;
        rhs += zll(ca) * zll(ca) * zll(it->second) * zll(it->second);
    }
    return full_table.sum_sq_all <= rhs;
}

// ---------------------------------------------------------------------------
// proof_trace_shift
// ---------------------------------------------------------------------------

namespace {

struct TraceBuilder {
    ProofTrace trace;

    void quantity(const std::string& name, const std::string& value) {
        trace.quantities.emplace_back(name, value);
    }
    void quantity(const std::string& name, const mpz_class& value) {
        trace.quantities.emplace_back(name, value.get_str());
    }
    void quantity(const std::string& name, long long value) {
        trace.quantities.emplace_back(name, std::to_string(value));
    }

    void exact(const std::string& name, const mpz_class& lhs, const mpz_class& rhs) {
        // lhs <= rhs required
        bool ok = lhs <= rhs;
        trace.steps.push_back({name, "exact", ld(lhs), ld(rhs), ratio_of(ld(lhs), ld(rhs)), ok, 0});
        if (!ok) throw ExactStepViolation(name);
    }
    void exact_real(const std::string& name, long double lhs, long double rhs) {
        // lhs <= rhs up to relative tolerance 1e-9 (real-valued sides only)
        bool ok = lhs <= rhs * (1.0L + 1e-9L) + 1e-30L;
        trace.steps.push_back({name, "exact", lhs, rhs, ratio_of(lhs, rhs), ok, 0});
        if (!ok) throw ExactStepViolation(name);
    }
    void identity(const std::string& name, const mpz_class& lhs, const mpz_class& rhs) {
        bool ok = lhs == rhs;
        trace.steps.push_back({name, "identity", ld(lhs), ld(rhs), 1.0L, ok, 0});
        if (!ok) throw ExactStepViolation(name);
    }
    void ratio(const std::string& name, long double lhs, long double rhs, int log_power) {
        trace.steps.push_back({name, "ratio", lhs, rhs, ratio_of(lhs, rhs), true, log_power});
    }
};

using Hist = std::map<Element, long long>;

long long hist_get(const Hist& h, const Element& k) {
    auto it = h.find(k);
    return it == h.end() ? 0 : it->second;
}

// dyadic level of a positive count
long long level_tau(long long c) {
    long long tau = 1;
    while (2 * tau <= c) tau *= 2;
    return tau;
}

// Picks the dyadic bucket of h maximizing sum_{x in bucket} h(x) * w(x),
// ties toward smaller tau. Returns (tau, members, sum_{x in bucket} w(x)).
struct WeightedBucket {
    long long tau = 1;
    std::vector<Element> members;
    mpz_class member_weight = 0; // sum of w over members
    mpz_class contribution = 0;  // sum of h*w over members
};

WeightedBucket richest_weighted_bucket(const Hist& h, const std::map<Element, mpz_class>& w) {
    std::map<long long, WeightedBucket> buckets;
    for (const auto& [x, c] : h) {
        long long tau = level_tau(c);
        auto& b = buckets[tau];
        b.tau = tau;
        b.members.push_back(x);
        mpz_class wx = 0;
        if (auto it = w.find(x); it != w.end()) wx = it->second;
        b.member_weight += wx;
        b.contribution += zll(c) * wx;
    }
    const WeightedBucket* best = nullptr;
    for (const auto& [tau, b] : buckets)
        if (!best || b.contribution > best->contribution) best = &b;
    return *best;
}

} // namespace

ProofTrace proof_trace_shift(const FSet& A_in, const FSet& B_in, const FSet& C_in,
                             const FSet& D_in, bool force) {
    TraceBuilder tb;
    const FieldCtx& ctx = A_in.ctx();
    bool had_zero = false;
    FSet A = strip_zero(A_in, had_zero), B = strip_zero(B_in, had_zero);
    FSet C = strip_zero(C_in, had_zero), D = strip_zero(D_in, had_zero);
    if (had_zero) tb.quantity("note", std::string("zero elements stripped (WLOG)"));
    if (A.empty() || B.empty() || C.empty() || D.empty())
        throw BadParams("proof trace requires nonempty zero-free sets");

    double quads = std::pow(static_cast<double>(A.size()), 2) *
                   std::pow(static_cast<double>(B.size()), 2);
    if (quads > 1e8) throw TooLarge("proof trace: |A|^2|B|^2 exceeds desk scale");

    // --- Lemma-style refinement ------------------------------------------
    RefineResult rr = refine_43(A, B, force);
    const FSet& A1 = rr.A1;
    tb.quantity("|A|", static_cast<long long>(A.size()));
    tb.quantity("|A1|", static_cast<long long>(A1.size()));
    tb.quantity("refine_iterations", static_cast<long long>(rr.iterations));
    if (rr.guaranteed)
        tb.exact_real("refine: |A1| >= |A|/e^3", static_cast<long double>(A.size()) / expl(3.0L),
                      static_cast<long double>(A1.size()));

    // --- popular decomposition -------------------------------------------
    FSet AB = combine(A1, B, BinOp::product);
    bool degenerate = A1.size() < 3;
    FSet P = AB;
    FSet A_prime = A1;
    mpz_class covered = zsize(A1) * zsize(B), uncovered = 0;
    if (!degenerate) {
        PopularityDecomposition d = popular_decompose(A1, B);
        P = d.P;
        A_prime = d.A_prime;
        covered = zll(d.covered_pairs);
        uncovered = zll(d.uncovered_pairs);
    } else {
        tb.quantity("note", std::string("|A1| < 3: degenerate decomposition P = AB, A' = A1"));
    }
    tb.quantity("|AB|", zsize(AB));
    tb.quantity("|P|", zsize(P));
    tb.quantity("|A'|", zsize(A_prime));
    tb.identity("pair partition: covered + uncovered = |A1||B|", covered + uncovered,
                zsize(A1) * zsize(B));
    if (!degenerate) {
        long double lnA = logl(static_cast<long double>(A1.size()));
        long double ab_pairs = ld(zsize(A1) * zsize(B));
        tb.exact_real("uncovered < |A1||B|/ln|A1|", ld(uncovered), ab_pairs / lnA);
        tb.exact_real("covered >= (1 - 1/ln|A1|)|A1||B|", (1.0L - 1.0L / lnA) * ab_pairs,
                      ld(covered));
        if (rr.guaranteed)
            tb.exact_real("|A'| >= (1 - 3/ln|A1|)|A1|",
                          (1.0L - 3.0L / lnA) * static_cast<long double>(A1.size()),
                          static_cast<long double>(A_prime.size()));
        long long mi = intersection_bound_check(A_prime, B, P);
        tb.quantity("min_row_intersection", mi);
        tb.exact("3 * min row intersection >= |B|", zsize(B), zll(3 * mi));
    }

    // --- rich 4/3 bucket Q of A'/A' --------------------------------------
    RepHistogram h_ap = rep_function(A_prime, A_prime, BinOp::ratio);
    DyadicBucket Q = richest_bucket(h_ap, Moment{4, 3});
    mpz_class zq = zsize(Q.members), delta = zll(Q.tau);
    tb.quantity("|Q|", zq);
    tb.quantity("Delta", Q.tau);
    long double e43_ap = energy_moment(h_ap, Moment{4, 3});
    // counts inside a level reach up to 2*tau, hence the (2 Delta)^{4/3} edge
    tb.exact_real("pigeonhole: E_{4/3}(A') <= levels * |Q| (2 Delta)^{4/3}", e43_ap,
                  static_cast<long double>(pigeonhole_levels(h_ap)) * ld(zq) *
                      powl(2.0L * static_cast<long double>(Q.tau), 4.0L / 3.0L));

    // --- trivial-equation solutions N ------------------------------------
    mpz_class N = trivial_solution_count(A_prime, B, Q, P);
    tb.quantity("N", N);
    tb.exact("N >= (1/9)|B|^2|Q|Delta", zsize(B) * zsize(B) * zq * delta, 9 * N);

    // --- equivalence classes ---------------------------------------------
    EquivClassTable table = equiv_classes(A1, B, Q.members, P);
    tb.quantity("|X|", table.class_count);
    tb.quantity("N_full", table.satisfying_quadruples);
    tb.exact("N <= N_full (A' subset of A1)", N, table.satisfying_quadruples);
    tb.exact("Cauchy-Schwarz: N_full^2 <= |X| * sum |class|^2",
             table.satisfying_quadruples * table.satisfying_quadruples,
             zll(table.class_count) * table.sum_sq_satisfying);
    tb.exact("sum |class|^2 (satisfying) <= sum |class|^2 (all)", table.sum_sq_satisfying,
             table.sum_sq_all);

    RepHistogram h_aa = rep_function(A1, A1, BinOp::ratio);
    RepHistogram h_bb = rep_function(B, B, BinOp::ratio);
    mpz_class cross = 0;
    for (const auto& [x, ca] : h_aa.counts) {
        long long cb = hist_get(h_bb.counts, x);
        cross += zll(ca) * zll(ca) * zll(cb) * zll(cb);
    }
    tb.quantity("sum r_{A/A}^2 r_{B/B}^2", cross);
    tb.exact("equivalence energy: sum |class|^2 <= sum r_{A/A}^2 r_{B/B}^2", table.sum_sq_all,
             cross);

    mpz_class e4_a = energy_moment_int(h_aa, 4);
    mpz_class e4_b = energy_moment_int(h_bb, 4);
    tb.exact("Cauchy-Schwarz: (sum r^2 r^2)^2 <= E_4(A1) E_4(B)", cross * cross, e4_a * e4_b);

    // --- fourth-energy bounds through products of shifts ------------------
    FSet CA1 = shifted_product(C, A1, ctx.one());
    FSet DB1 = shifted_product(D, B, ctx.from_int(-1));
    mpz_class zca1 = zsize(CA1), zdb1 = zsize(DB1), za1 = zsize(A1), zb = zsize(B),
              zc = zsize(C), zd = zsize(D);
    tb.quantity("|C(A1+1)|", zca1);
    tb.quantity("|D(B-1)|", zdb1);
    tb.ratio("E_4(A1) vs |C(A1+1)|^2|A1|^3/|C|", ld(e4_a),
             ld(zca1 * zca1 * zpow(za1, 3)) / ld(zc), 1);
    tb.ratio("E_4(B) vs |D(B-1)|^2|B|^3/|D|", ld(e4_b), ld(zdb1 * zdb1 * zpow(zb, 3)) / ld(zd),
             1);

    // --- |X| against P^4 solutions ----------------------------------------
    RepHistogram m_ab = rep_function(A1, B, BinOp::product);
    mpz_class cp = 0;
    {
        // C_P = sum_{q in Q} |{t in P : qt in P}|^2
        for (const auto& q : Q.members.elems()) {
            long long k = 0;
            for (const auto& t : P.elems())
                if (P.contains(ctx.mul(q, t))) ++k;
            cp += zll(k) * zll(k);
        }
    }
    tb.quantity("C_P", cp);
    tb.exact("|X| <= |{(s,t,u,v) in P^4 : s/t = u/v in Q}|", zll(table.class_count), cp);

    // g(q) = |{(a,b,a',b') in (A1 x B)^2 : (ab)/(a'b') = q}| = sum_z m(qz) m(z)
    // over the AB product histogram m.
    std::map<Element, mpz_class> g;
    for (const auto& q : Q.members.elems()) {
        mpz_class s = 0;
        for (const auto& [z, mz] : m_ab.counts) {
            long long mqz = hist_get(m_ab.counts, ctx.mul(q, z));
            if (mqz) s += zll(mqz) * zll(mz);
        }
        g[q] = s;
    }
    // C_0 = # of (a1..a4, b1..b4) with (a1b1)/(a2b2) = (a3b3)/(a4b4) in Q;
    // both fractions factor independently for fixed q.
    mpz_class c0 = 0;
    for (const auto& [q, s] : g) c0 += s * s;
    tb.quantity("C_0", c0);
    if (!degenerate) {
        long double lnA = logl(static_cast<long double>(A1.size()));
        long double theta = ld(za1 * zb) / (lnA * static_cast<long double>(m_ab.counts.size()));
        tb.exact_real("popularity: theta^4 C_P <= C_0", powl(theta, 4.0L) * ld(cp), ld(c0));
    }

    // --- dyadic chain R1, R2 over (BA)/A ----------------------------------
    RepHistogram h_ba = rep_from_hist(rep_function(B, A1, BinOp::product), A1, BinOp::ratio);
    int levels_ba = pigeonhole_levels(h_ba);

    // w1(x) = sum_{b in B} g(x/b) over x in supp(h_ba)
    std::map<Element, mpz_class> w1;
    for (const auto& [x, c] : h_ba.counts) {
        mpz_class s = 0;
        for (const auto& b : B.elems()) {
            auto it = g.find(ctx.div(x, b));
            if (it != g.end()) s += it->second;
        }
        if (s != 0) w1[x] = s;
    }
    {
        mpz_class total = 0;
        for (const auto& [x, c] : h_ba.counts) {
            if (auto it = w1.find(x); it != w1.end()) total += zll(c) * it->second;
        }
        tb.identity("decomposition: C_0 = sum_x r_{BA/A}(x) w1(x)", c0, total);
    }
    WeightedBucket R1 = richest_weighted_bucket(h_ba.counts, w1);
    FSet R1set(ctx, R1.members);
    mpz_class v1 = R1.member_weight;
    mpz_class delta1 = zll(R1.tau);
    tb.quantity("|R1|", zsize(R1set));
    tb.quantity("Delta_1", R1.tau);
    tb.quantity("V_1", v1);
    tb.exact("pigeonhole: C_0 <= levels * 2 Delta_1 V_1", c0,
             mpz_class(levels_ba) * 2 * delta1 * v1);

    // r_{R1/B} over Q
    Hist r1b;
    for (const auto& x : R1set.elems())
        for (const auto& b : B.elems()) ++r1b[ctx.div(x, b)];
    // w1'(y) = sum_{b in B} [y/b in Q] r_{R1/B}(y/b)
    std::map<Element, mpz_class> w1p;
    for (const auto& [y, c] : h_ba.counts) {
        mpz_class s = 0;
        for (const auto& b : B.elems()) {
            Element q = ctx.div(y, b);
            if (Q.members.contains(q)) s += zll(hist_get(r1b, q));
        }
        if (s != 0) w1p[y] = s;
    }
    {
        mpz_class total = 0;
        for (const auto& [y, c] : h_ba.counts) {
            if (auto it = w1p.find(y); it != w1p.end()) total += zll(c) * it->second;
        }
        tb.identity("decomposition: V_1 = sum_y r_{BA/A}(y) w1'(y)", v1, total);
    }
    WeightedBucket R2 = richest_weighted_bucket(h_ba.counts, w1p);
    FSet R2set(ctx, R2.members);
    mpz_class v2 = R2.member_weight;
    mpz_class delta1p = zll(R2.tau);
    tb.quantity("|R2|", zsize(R2set));
    tb.quantity("Delta_1'", R2.tau);
    tb.quantity("V_2", v2);
    tb.exact("pigeonhole: V_1 <= levels * 2 Delta_1' V_2", v1,
             mpz_class(levels_ba) * 2 * delta1p * v2);

    Hist r2b;
    for (const auto& x : R2set.elems())
        for (const auto& b : B.elems()) ++r2b[ctx.div(x, b)];
    mpz_class v2_check = 0, s1sq = 0, s2sq = 0, s1q4 = 0, s2q4 = 0;
    for (const auto& q : Q.members.elems()) {
        mpz_class c1 = zll(hist_get(r1b, q)), c2 = zll(hist_get(r2b, q));
        v2_check += c1 * c2;
        s1sq += c1 * c1;
        s2sq += c2 * c2;
        s1q4 += c1 * c1 * c1 * c1;
        s2q4 += c2 * c2 * c2 * c2;
    }
    tb.identity("V_2 = sum_Q r_{R1/B} r_{R2/B}", v2, v2_check);
    tb.exact("Cauchy-Schwarz: V_2^2 <= (sum_Q r_{R1/B}^2)(sum_Q r_{R2/B}^2)", v2 * v2,
             s1sq * s2sq);

    mpz_class e4_br1 = energy_moment_int(rep_function(R1set, B, BinOp::ratio), 4);
    mpz_class e4_br2 = energy_moment_int(rep_function(R2set, B, BinOp::ratio), 4);
    tb.exact("Cauchy-Schwarz: (sum_Q r_{R1/B}^2)^2 <= |Q| E_4(B,R1)", s1sq * s1sq, zq * s1q4);
    tb.exact("(sum_Q r_{R1/B}^4) <= E_4(B,R1)", s1q4, e4_br1);
    tb.exact("Cauchy-Schwarz: (sum_Q r_{R2/B}^2)^2 <= |Q| E_4(B,R2)", s2sq * s2sq, zq * s2q4);
    tb.exact("(sum_Q r_{R2/B}^4) <= E_4(B,R2)", s2q4, e4_br2);

    // E_4(B, R_i) against |D(B-1)|^3 |R_i|^2 / |D|
    auto e4_ri_step = [&](const char* name, const mpz_class& e4v, const mpz_class& zri) {
        tb.ratio(name, ld(e4v), ld(zpow(zdb1, 3) * zri * zri) / ld(zd), 1);
        bool cond1 = zb * zb * zdb1 <= zri * zpow(zd, 3);
        bool cond2 = zb * zdb1 * zdb1 <= zri * zri * zpow(zd, 3);
        if ((!cond1 || !cond2) && zb <= zd) {
            tb.exact("fallback: |R_i|^2|B||D| <= |D(B-1)|^3", zri * zri * zb * zd,
                     zpow(zdb1, 3));
        }
    };
    e4_ri_step("E_4(B,R1) vs |D(B-1)|^3|R1|^2/|D|", e4_br1, zsize(R1set));
    e4_ri_step("E_4(B,R2) vs |D(B-1)|^3|R2|^2/|D|", e4_br2, zsize(R2set));

    // --- dyadic chain S1, S2 over A1/A1 -----------------------------------
    mpz_class u1 = 0, u2 = 0, u_full = 0;
    for (const auto& [x, c] : h_ba.counts) {
        mpz_class csq = zll(c) * zll(c);
        u_full += csq;
        if (R1set.contains(x)) u1 += csq;
        if (R2set.contains(x)) u2 += csq;
    }
    tb.quantity("U_1 = sum_{R1} r_{BA/A}^2", u1);
    tb.quantity("U_2 = sum_{R2} r_{BA/A}^2", u2);
    tb.exact("bucket edge: |R1| Delta_1^2 <= U_1", zsize(R1set) * delta1 * delta1, u1);
    tb.exact("bucket edge: |R2| Delta_1'^2 <= U_2", zsize(R2set) * delta1p * delta1p, u2);
    tb.exact("U_1 <= U_full", u1, u_full);
    tb.exact("U_2 <= U_full", u2, u_full);

    int levels_aa = pigeonhole_levels(h_aa);
    // t(v) = |{(a3,a4,b2) : (a3/a4) b2 = v}|
    Hist tv;
    for (const auto& [s, c] : h_aa.counts)
        for (const auto& b : B.elems()) tv[ctx.mul(s, b)] += c;
    // w2(s) = sum_{b1} t(s b1)
    std::map<Element, mpz_class> w2;
    for (const auto& [s, c] : h_aa.counts) {
        mpz_class acc = 0;
        for (const auto& b : B.elems()) acc += zll(hist_get(tv, ctx.mul(s, b)));
        if (acc != 0) w2[s] = acc;
    }
    {
        mpz_class total = 0;
        for (const auto& [s, c] : h_aa.counts) {
            if (auto it = w2.find(s); it != w2.end()) total += zll(c) * it->second;
        }
        tb.identity("decomposition: U_full = sum_s r_{A/A}(s) w2(s)", u_full, total);
    }
    WeightedBucket S1 = richest_weighted_bucket(h_aa.counts, w2);
    FSet S1set(ctx, S1.members);
    mpz_class w1_count = S1.member_weight;
    mpz_class delta2 = zll(S1.tau);
    tb.quantity("|S1|", zsize(S1set));
    tb.quantity("Delta_2", S1.tau);
    tb.exact("pigeonhole: U_full <= levels * 2 Delta_2 W_1", u_full,
             mpz_class(levels_aa) * 2 * delta2 * w1_count);

    // r_{S1 B}(v) as a product histogram
    Hist s1b;
    for (const auto& s : S1set.elems())
        for (const auto& b : B.elems()) ++s1b[ctx.mul(s, b)];
    // w2'(t) = |{(s in S1, b1, b2): s b1 = t b2}| = sum_{b2} r_{S1 B}(t b2)
    std::map<Element, mpz_class> w2p;
    for (const auto& [t, c] : h_aa.counts) {
        mpz_class acc = 0;
        for (const auto& b : B.elems()) acc += zll(hist_get(s1b, ctx.mul(t, b)));
        if (acc != 0) w2p[t] = acc;
    }
    {
        mpz_class total = 0;
        for (const auto& [t, c] : h_aa.counts) {
            if (auto it = w2p.find(t); it != w2p.end()) total += zll(c) * it->second;
        }
        tb.identity("decomposition: W_1 = sum_t r_{A/A}(t) w2'(t)", w1_count, total);
    }
    WeightedBucket S2 = richest_weighted_bucket(h_aa.counts, w2p);
    FSet S2set(ctx, S2.members);
    mpz_class w2_count = S2.member_weight;
    mpz_class delta2p = zll(S2.tau);
    tb.quantity("|S2|", zsize(S2set));
    tb.quantity("Delta_2'", S2.tau);
    tb.exact("pigeonhole: W_1 <= levels * 2 Delta_2' W_2", w1_count,
             mpz_class(levels_aa) * 2 * delta2p * w2_count);

    Hist s2b;
    for (const auto& s : S2set.elems())
        for (const auto& b : B.elems()) ++s2b[ctx.mul(s, b)];
    mpz_class w2_check = 0, e2_s1 = 0, e2_s2 = 0;
    for (const auto& [v, c1] : s1b) w2_check += zll(c1) * zll(hist_get(s2b, v));
    for (const auto& [v, c] : s1b) e2_s1 += zll(c) * zll(c);
    for (const auto& [v, c] : s2b) e2_s2 += zll(c) * zll(c);
    tb.identity("W_2 = sum r_{S1 B} r_{S2 B}", w2_count, w2_check);
    tb.exact("Cauchy-Schwarz: W_2^2 <= E(B,S1) E(B,S2)", w2_count * w2_count, e2_s1 * e2_s2);

    // E(B, S_i) against |S_i|^{3/2} |D(B-1)|^{3/2} / |D|^{1/2}
    auto e2_si_step = [&](const char* name, const mpz_class& e2v, const mpz_class& zsi) {
        tb.ratio(name, ld(e2v),
                 powl(ld(zsi), 1.5L) * powl(ld(zdb1), 1.5L) / sqrtl(ld(zd)), 1);
        bool cond1 = zb * zb * zdb1 <= zsi * zpow(zd, 3);
        bool cond2 = zb * zdb1 * zdb1 <= zsi * zsi * zpow(zd, 3);
        if ((!cond1 || !cond2) && zb <= zd) {
            tb.exact("fallback: |B|^2|D||S_i| <= |D(B-1)|^3", zb * zb * zd * zsi,
                     zpow(zdb1, 3));
        }
    };
    e2_si_step("E(B,S1) vs |S1|^{3/2}|D(B-1)|^{3/2}/|D|^{1/2}", e2_s1, zsize(S1set));
    e2_si_step("E(B,S2) vs |S2|^{3/2}|D(B-1)|^{3/2}/|D|^{1/2}", e2_s2, zsize(S2set));

    long double e43_a1 = energy_moment(h_aa, Moment{4, 3});
    tb.exact_real("bucket edge: |S1| Delta_2^{4/3} <= E_{4/3}(A1)",
                  ld(zsize(S1set)) * powl(static_cast<long double>(S1.tau), 4.0L / 3.0L),
                  e43_a1);
    tb.exact_real("bucket edge: |S2| Delta_2'^{4/3} <= E_{4/3}(A1)",
                  ld(zsize(S2set)) * powl(static_cast<long double>(S2.tau), 4.0L / 3.0L),
                  e43_a1);
    tb.exact_real("refinement stop: E_{4/3}(A1') >= E_{4/3}(A1)/4", e43_a1 / 4.0L, e43_ap);

    // --- final assembly (hidden constants and log powers) ------------------
    mpz_class zab = zsize(AB);
    long double assembly_lhs = powl(ld(zq), 1.5L) * ld(delta * delta) * powl(ld(zb), 6.5L) *
                               powl(ld(za1), 2.5L) * powl(ld(zc), 1.5L) * sqrtl(ld(zd));
    long double assembly_rhs = powl(ld(zab), 4.0L) * ld(zca1) * powl(ld(zdb1), 4.0L) *
                               powl(e43_a1, 1.5L);
    tb.ratio("assembly: |Q|^{3/2}Delta^2|B|^{13/2}|A|^{5/2}|C|^{3/2}|D|^{1/2} vs "
             "|AB|^4|C(A+1)||D(B-1)|^4 E_{4/3}(A)^{3/2}",
             assembly_lhs, assembly_rhs, 4);
    tb.ratio("theorem: |B|^{13}|A|^5|C|^3|D| vs |AB|^8|C(A+1)|^2|D(B-1)|^8",
             ld(zpow(zb, 13) * zpow(za1, 5) * zpow(zc, 3) * zd),
             ld(zpow(zab, 8) * zca1 * zca1 * zpow(zdb1, 8)), 8);

    return tb.trace;
}

} // namespace shiftlab
