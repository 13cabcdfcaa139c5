#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shiftlab/popularity.hpp"
#include "shiftlab/search.hpp"

using namespace shiftlab;

namespace {

FSet make(const FieldCtx& ctx, std::initializer_list<long long> vals) {
    std::vector<Element> e;
    for (long long v : vals) e.push_back(ctx.from_int(v));
    return FSet(ctx, std::move(e));
}

FSet random_zero_free(const FieldCtx& ctx, std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> size(lo, hi);
    std::uniform_int_distribution<std::uint64_t> val(1, ctx.modulus() - 1);
    std::vector<Element> e;
    int n = size(rng);
    while (static_cast<int>(FSet(ctx, e).size()) < n) e.push_back(Element(val(rng)));
    return FSet(ctx, std::move(e));
}

} // namespace

TEST_CASE("popular decomposition worked instance") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    PopularityDecomposition d = popular_decompose(a, a);
    // threshold 9 / (ln 3 * 5) ~ 1.638; products with count >= 2 are {2,4,8}
    CHECK(d.threshold_P == doctest::Approx(9.0 / (std::log(3.0) * 5.0)));
    CHECK(d.P == make(q, {2, 4, 8}));
    CHECK(d.A_prime == a); // per-a covered counts 2,3,2 all >= (2/3)*3
    CHECK(d.threshold_A == doctest::Approx(2.0));
    CHECK(d.covered_pairs == 7);
    CHECK(d.uncovered_pairs == 2);
    CHECK(d.covered_pairs + d.uncovered_pairs == 9);
}

TEST_CASE("popular decomposition preconditions") {
    FieldCtx q = FieldCtx::rational();
    CHECK_THROWS_AS(popular_decompose(make(q, {1}), make(q, {1})), SetTooSmall);
    CHECK_THROWS_AS(popular_decompose(make(q, {0, 1, 2}), make(q, {1, 2, 3})), ZeroElement);
    CHECK_THROWS_AS(popular_decompose(make(q, {1, 2, 3}), make(q, {0, 1})), ZeroElement);
}

TEST_CASE("popular decomposition coverage bound on a true subgroup") {
    FieldCtx f = FieldCtx::prime(101);
    // 2 is a primitive root mod 101; 2^4 = 16 has order 25
    FSet sub = parse_set(f, "subgroup(16,25)");
    REQUIRE(sub.size() == 25);
    PopularityDecomposition d = popular_decompose(sub, sub);
    double floor_cov = (1.0 - 1.0 / std::log(25.0)) * 625.0;
    CHECK(static_cast<double>(d.covered_pairs) >= floor_cov);
    CHECK(d.covered_pairs + d.uncovered_pairs == 625);
}

TEST_CASE("intersection bound worked instance") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    FSet p = make(q, {2, 4, 8});
    // rows: {2,4}, {1,2,4}, {1,2}; the worst pair intersects in exactly {2}
    CHECK(intersection_bound_check(a, a, p) == 1); // >= |B|/3 = 1
}

TEST_CASE("popularity guarantees on random instances") {
    FieldCtx f = FieldCtx::prime(4294967311ULL);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 20; ++i) {
        FSet a = random_zero_free(f, rng, 21, 40);
        FSet b = random_zero_free(f, rng, 21, 40);
        PopularityDecomposition d = popular_decompose(a, b);
        double lnA = std::log(static_cast<double>(a.size()));
        double pairs = static_cast<double>(a.size() * b.size());
        REQUIRE(static_cast<double>(d.covered_pairs) >= (1.0 - 1.0 / lnA) * pairs);
        REQUIRE(static_cast<double>(d.A_prime.size()) >=
                (1.0 - 3.0 / lnA) * static_cast<double>(a.size()));
        REQUIRE(d.covered_pairs + d.uncovered_pairs ==
                static_cast<long long>(a.size() * b.size()));
        REQUIRE(static_cast<double>(d.uncovered_pairs) < pairs / lnA);
        long long mi = intersection_bound_check(d.A_prime, b, d.P);
        REQUIRE(3 * mi >= static_cast<long long>(b.size()));
    }
}

TEST_CASE("refinement stops immediately when the energy condition already holds") {
    FieldCtx f = FieldCtx::prime(4294967311ULL);
    std::mt19937_64 rng(5);
    FSet a = random_zero_free(f, rng, 25, 25);
    FSet b = random_zero_free(f, rng, 25, 25);
    RefineResult r = refine_43(a, b);
    CHECK(r.guaranteed);
    CHECK(r.iterations <= static_cast<int>(std::ceil(std::log(25.0))));
    CHECK(static_cast<double>(r.A1.size()) >= 25.0 / std::exp(3.0));
    // returned set satisfies the stopping condition
    PopularityDecomposition d = popular_decompose(r.A1, b);
    long double e_cur = ratio_energy_43(r.A1);
    long double e_next = ratio_energy_43(d.A_prime);
    CHECK(e_next >= e_cur / 4.0L * (1.0L - 1e-9L));
}

TEST_CASE("refinement on a true subgroup of order 30") {
    FieldCtx f = FieldCtx::prime(4294967311ULL);
    FSet a = generate_family(f, FamilyKind::subgroup, FamilyParams{f.one(), f.zero(), 30});
    REQUIRE(combine(a, a, BinOp::product) == a);
    RefineResult r = refine_43(a, a);
    CHECK(r.guaranteed);
    CHECK(static_cast<double>(r.A1.size()) >= 30.0 / std::exp(3.0));
    CHECK(r.iterations <= static_cast<int>(std::ceil(std::log(30.0))));
    CHECK(!r.energy_trace.empty());
}

TEST_CASE("small sets need the force flag") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    CHECK_THROWS_AS(refine_43(a, a), SetTooSmall);
    RefineResult r = refine_43(a, a, true);
    CHECK_FALSE(r.guaranteed);
    CHECK(r.iterations <= 2); // ceil(ln 3) = 2
}
