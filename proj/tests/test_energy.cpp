#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "shiftlab/energy.hpp"

using namespace shiftlab;

namespace {

FSet make(const FieldCtx& ctx, std::initializer_list<long long> vals) {
    std::vector<Element> e;
    for (long long v : vals) e.push_back(ctx.from_int(v));
    return FSet(ctx, std::move(e));
}

long long count_of(const RepHistogram& h, const Element& k) {
    auto it = h.counts.find(k);
    return it == h.counts.end() ? 0 : it->second;
}

FSet random_set(const FieldCtx& ctx, std::mt19937_64& rng, int max_size) {
    std::uniform_int_distribution<int> size(1, max_size);
    std::uniform_int_distribution<std::uint64_t> val(1, ctx.modulus() - 1);
    std::vector<Element> e;
    int n = size(rng);
    for (int i = 0; i < n; ++i) e.push_back(Element(val(rng)));
    return FSet(ctx, std::move(e));
}

} // namespace

TEST_CASE("representation histogram worked instances") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});

    RepHistogram r = rep_function(a, a, BinOp::ratio);
    CHECK(r.counts.size() == 5);
    CHECK(count_of(r, q.one()) == 3);
    CHECK(count_of(r, q.from_int(2)) == 2);
    CHECK(count_of(r, q.parse("1/2")) == 2);
    CHECK(count_of(r, q.from_int(4)) == 1);
    CHECK(count_of(r, q.parse("1/4")) == 1);
    CHECK(r.total_pairs == 9);

    RepHistogram one = rep_function(make(q, {1}), make(q, {1}), BinOp::ratio);
    CHECK(one.counts.size() == 1);
    CHECK(count_of(one, q.one()) == 1);

    RepHistogram prod = rep_function(a, a, BinOp::product);
    CHECK(count_of(prod, q.from_int(1)) == 1);
    CHECK(count_of(prod, q.from_int(2)) == 2);
    CHECK(count_of(prod, q.from_int(4)) == 3);
    CHECK(count_of(prod, q.from_int(8)) == 2);
    CHECK(count_of(prod, q.from_int(16)) == 1);
}

TEST_CASE("moment energies on the worked histogram") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    RepHistogram h = rep_function(a, a, BinOp::ratio);
    CHECK(energy_moment_int(h, 1) == 9);
    CHECK(energy_moment_int(h, 2) == 19);
    CHECK(energy_moment_int(h, 4) == 115);
    CHECK(energy_moment(h, Moment{2, 1}) == doctest::Approx(19.0));
}

TEST_CASE("fractional 4/3 moment matches a cube-root oracle") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    RepHistogram h = rep_function(a, a, BinOp::ratio);
    long double oracle = 0;
    for (const auto& [v, c] : h.counts) {
        long double c4 = static_cast<long double>(c) * c * c * c;
        oracle += cbrtl(c4);
    }
    long double got = energy_moment(h, Moment{4, 3});
    CHECK(fabsl(got - oracle) <= 1e-9L * oracle);
}

TEST_CASE("brute-force oracle agrees with the histogram energies") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    CHECK(energy_bruteforce(a, a, BinOp::ratio, 2) == 19);
    CHECK(energy_bruteforce(make(q, {1}), make(q, {1}), BinOp::ratio, 4) == 1);
    FSet two = make(q, {1, 2});
    CHECK(energy_bruteforce(two, two, BinOp::ratio, 2) == 6);
    CHECK_THROWS_AS(energy_bruteforce(make(q, {1, 2, 3, 4, 5, 6, 7, 8}),
                                      make(q, {1, 2, 3, 4, 5, 6, 7, 8}), BinOp::ratio, 5),
                    TooLarge);
}

TEST_CASE("mass identity on random histograms") {
    FieldCtx f = FieldCtx::prime(101);
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 300; ++i) {
        FSet x = random_set(f, rng, 8), y = random_set(f, rng, 8);
        for (BinOp op : {BinOp::sum, BinOp::product}) {
            RepHistogram h = rep_function(x, y, op);
            long long mass = 0;
            for (const auto& [v, c] : h.counts) mass += c;
            REQUIRE(mass == static_cast<long long>(x.size() * y.size()));
        }
    }
}

TEST_CASE("moment Cauchy-Schwarz: E2^2 <= E1 E3") {
    FieldCtx f = FieldCtx::prime(101);
    std::mt19937_64 rng(777);
    for (int i = 0; i < 200; ++i) {
        FSet x = random_set(f, rng, 8), y = random_set(f, rng, 8);
        RepHistogram h = rep_function(x, y, BinOp::product);
        mpz_class e1 = energy_moment_int(h, 1), e2 = energy_moment_int(h, 2),
                  e3 = energy_moment_int(h, 3);
        REQUIRE(e2 * e2 <= e1 * e3);
    }
}

TEST_CASE("dilation leaves the count multiset invariant") {
    FieldCtx f = FieldCtx::prime(101);
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<std::uint64_t> lam(1, 100);
    for (int i = 0; i < 100; ++i) {
        FSet a = random_set(f, rng, 8), d = random_set(f, rng, 8);
        Element l(lam(rng));
        RepHistogram h1 = rep_function(a, d, BinOp::ratio);
        RepHistogram h2 = rep_function(dilate(a, l), dilate(d, l), BinOp::ratio);
        std::multiset<long long> m1, m2;
        for (const auto& [v, c] : h1.counts) m1.insert(c);
        for (const auto& [v, c] : h2.counts) m2.insert(c);
        REQUIRE(m1 == m2);
    }
}

TEST_CASE("dyadic buckets partition the support by count level") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    RepHistogram h = rep_function(a, a, BinOp::ratio);
    auto buckets = dyadic_buckets(h);
    REQUIRE(buckets.size() == 2);
    CHECK(buckets[0].tau == 1);
    CHECK(buckets[0].members == FSet(q, {q.from_int(4), q.parse("1/4")}));
    CHECK(buckets[1].tau == 2);
    CHECK(buckets[1].members == FSet(q, {q.one(), q.from_int(2), q.parse("1/2")}));

    std::size_t covered = 0;
    for (const auto& b : buckets) {
        covered += b.members.size();
        for (const auto& m : b.members.elems()) {
            long long c = h.counts.at(m);
            REQUIRE(c >= b.tau);
            REQUIRE(c < 2 * b.tau);
        }
    }
    CHECK(covered == h.counts.size());
}

TEST_CASE("dyadic buckets degenerate instances") {
    FieldCtx q = FieldCtx::rational();
    RepHistogram single{q, BinOp::ratio, {{q.one(), 1}}, 1};
    auto b1 = dyadic_buckets(single);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].tau == 1);

    RepHistogram pow2{q, BinOp::ratio, {{q.one(), 8}}, 8};
    auto b2 = dyadic_buckets(pow2);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0].tau == 8);
}

TEST_CASE("richest bucket and the pigeonhole guarantee") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2, 4});
    RepHistogram h = rep_function(a, a, BinOp::ratio);
    CHECK(pigeonhole_levels(h) == 2); // r_max = 3

    DyadicBucket b4 = richest_bucket(h, Moment{4, 1});
    CHECK(b4.tau == 2);
    CHECK(b4.members.size() == 3);
    CHECK(b4.weight == doctest::Approx(48.0)); // 3 * 2^4
    // upper-edge pigeonhole: |S| (2 tau)^4 * levels >= E_4
    CHECK(b4.weight * 16.0L * pigeonhole_levels(h) >= 115.0L);

    DyadicBucket b2 = richest_bucket(h, Moment{2, 1});
    CHECK(b2.tau == 2);
    CHECK(b2.weight == doctest::Approx(12.0));

    RepHistogram single{q, BinOp::ratio, {{q.one(), 1}}, 1};
    CHECK(richest_bucket(single, Moment{4, 1}).tau == 1);
    RepHistogram empty{q, BinOp::ratio, {}, 0};
    CHECK_THROWS_AS(richest_bucket(empty, Moment{4, 1}), EmptyHistogram);
}

TEST_CASE("richest bucket pigeonhole bound on random histograms") {
    FieldCtx f = FieldCtx::prime(101);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        FSet x = random_set(f, rng, 10), y = random_set(f, rng, 10);
        RepHistogram h = rep_function(x, y, BinOp::product);
        for (Moment n : {Moment{2, 1}, Moment{4, 1}, Moment{4, 3}}) {
            DyadicBucket b = richest_bucket(h, n);
            long double e = energy_moment(h, n);
            long double edge = powl(2.0L, n.as_real()); // counts reach 2*tau
            REQUIRE(b.weight * edge * pigeonhole_levels(h) >= e * (1.0L - 1e-9L));
        }
    }
}

TEST_CASE("composite-source histograms count triples") {
    FieldCtx q = FieldCtx::rational();
    FSet a = make(q, {1, 2}), b = make(q, {1, 3});
    RepHistogram ba = rep_function(b, a, BinOp::product);
    RepHistogram ba_over_a = rep_from_hist(ba, a, BinOp::ratio);
    // total count must be |B||A|*|A| triples
    long long mass = 0;
    for (const auto& [v, c] : ba_over_a.counts) mass += c;
    CHECK(mass == 8);
    CHECK(ba_over_a.total_pairs == 8);
    // direct triple oracle
    std::map<Element, long long> oracle;
    for (const auto& bb : b.elems())
        for (const auto& aa : a.elems())
            for (const auto& a2 : a.elems()) ++oracle[q.div(q.mul(bb, aa), a2)];
    CHECK(ba_over_a.counts == oracle);
}
