#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shiftlab/field.hpp"

using namespace shiftlab;

TEST_CASE("primality check is deterministic and correct") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(7));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(4294967311ULL));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(100));
    CHECK_FALSE(is_prime_u64(4294967311ULL * 3));
    // strong pseudoprime to several small bases
    CHECK_FALSE(is_prime_u64(3215031751ULL));
}

TEST_CASE("context construction validates the modulus") {
    CHECK_NOTHROW(FieldCtx::prime(101));
    CHECK_THROWS_AS(FieldCtx::prime(100), NonPrimeModulus);
    CHECK_THROWS_AS(FieldCtx::prime(1), NonPrimeModulus);
}

TEST_CASE("prime-mode arithmetic") {
    FieldCtx f7 = FieldCtx::prime(7);
    CHECK(f7.mul(f7.from_int(3), f7.from_int(5)) == f7.from_int(1));
    CHECK(f7.add(f7.from_int(4), f7.from_int(5)) == f7.from_int(2));
    CHECK(f7.sub(f7.from_int(2), f7.from_int(5)) == f7.from_int(4));
    CHECK(f7.neg(f7.from_int(3)) == f7.from_int(4));
    CHECK(f7.div(f7.from_int(1), f7.from_int(3)) == f7.from_int(5));
    CHECK_THROWS_AS(f7.inv(f7.zero()), DivisionByZero);
    CHECK_THROWS_AS(f7.div(f7.one(), f7.zero()), DivisionByZero);
}

TEST_CASE("rational-mode arithmetic is exact and canonical") {
    FieldCtx q = FieldCtx::rational();
    Element half = q.div(q.from_int(1), q.from_int(2));
    CHECK(half.str() == "1/2");
    CHECK(q.mul(half, q.from_int(2)) == q.one());
    CHECK(q.div(q.from_int(4), q.from_int(8)) == half); // reduced form
    CHECK(q.add(half, half) == q.one());
    CHECK_THROWS_AS(q.inv(q.zero()), DivisionByZero);
}

TEST_CASE("element parsing round-trips and canonicalizes") {
    FieldCtx q = FieldCtx::rational();
    CHECK(q.parse("3/4").str() == "3/4");
    CHECK(q.parse("6/8") == q.parse("3/4"));
    CHECK(q.parse("-3").str() == "-3");
    FieldCtx f7 = FieldCtx::prime(7);
    CHECK(f7.parse("-1") == f7.from_int(6));
    CHECK(f7.parse("10") == f7.from_int(3));
}

TEST_CASE("size-versus-characteristic guard") {
    FieldCtx f101 = FieldCtx::prime(101);
    CHECK(f101.char_guard(3, 1, 4));        // 81 < 101
    CHECK_FALSE(f101.char_guard(4, 1, 4));  // 256 >= 101
    CHECK(FieldCtx::rational().char_guard(1000, 1, 4));
    // 18/35 exponent: n^35 < p^18
    FieldCtx big = FieldCtx::prime(4294967311ULL);
    CHECK(big.char_guard(100, 18, 35));
}

TEST_CASE("field axioms hold exhaustively for small primes") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL, 31ULL}) {
        FieldCtx f = FieldCtx::prime(p);
        for (std::uint64_t x = 0; x < p; ++x) {
            Element ex(x);
            if (x != 0) CHECK(f.mul(ex, f.inv(ex)) == f.one());
            for (std::uint64_t y = 0; y < p; ++y) {
                Element ey(y);
                CHECK(f.add(ex, ey) == f.add(ey, ex));
                CHECK(f.mul(ex, ey) == f.mul(ey, ex));
                for (std::uint64_t z = 0; z < p; ++z) {
                    Element ez(z);
                    CHECK(f.mul(f.mul(ex, ey), ez) == f.mul(ex, f.mul(ey, ez)));
                    CHECK(f.add(f.add(ex, ey), ez) == f.add(ex, f.add(ey, ez)));
                    CHECK(f.mul(ex, f.add(ey, ez)) == f.add(f.mul(ex, ey), f.mul(ex, ez)));
                }
            }
        }
    }
}

TEST_CASE("structural ordering is a strict weak order usable for map keys") {
    FieldCtx q = FieldCtx::rational();
    Element a = q.parse("1/2"), b = q.parse("2"), c = q.parse("1/2");
    CHECK(a == c);
    CHECK_FALSE(a < c);
    CHECK((a < b || b < a));
}
