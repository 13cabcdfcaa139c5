#include "shiftlab/field.hpp"

namespace shiftlab {

bool Element::is_zero() const {
    if (is_rational()) return rational() == 0;
    return residue() == 0;
}

std::string Element::str() const {
    if (is_rational()) return rational().get_str();
    return std::to_string(residue());
}

bool Element::operator==(const Element& o) const {
    if (is_rational() != o.is_rational()) return false;
    if (is_rational()) return rational() == o.rational();
    return residue() == o.residue();
}

bool Element::operator<(const Element& o) const {
    if (is_rational() != o.is_rational()) return is_rational() < o.is_rational();
    if (is_rational()) return rational() < o.rational();
    return residue() < o.residue();
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, p);
        base = mulmod_u64(base, base, p);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set decides primality for every n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

FieldCtx FieldCtx::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) {
        throw NonPrimeModulus("modulus " + std::to_string(p) + " is not prime");
    }
    return FieldCtx(true, p);
}

FieldCtx FieldCtx::rational() {
    return FieldCtx(false, 0);
}

Element FieldCtx::zero() const {
    return prime_mode_ ? Element(std::uint64_t{0}) : Element(mpq_class(0));
}

Element FieldCtx::one() const {
    return prime_mode_ ? Element(std::uint64_t{1} % p_) : Element(mpq_class(1));
}

Element FieldCtx::from_int(long long n) const {
    if (!prime_mode_) return Element(mpq_class(static_cast<long>(n)));
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return Element(static_cast<std::uint64_t>(r));
}

Element FieldCtx::from_mpz(const mpz_class& n) const {
    if (!prime_mode_) return Element(mpq_class(n));
    mpz_class r = n % mpz_class(p_);
    if (r < 0) r += mpz_class(p_);
    return Element(r.get_ui());
}

Element FieldCtx::parse(const std::string& s) const {
    if (s.empty()) throw ParseError("empty element literal");
    if (!prime_mode_) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
        q.canonicalize();
        return Element(q);
    }
    mpz_class n;
    if (n.set_str(s, 10) != 0) throw ParseError("bad integer literal: " + s);
    return from_mpz(n);
}

void FieldCtx::check(const Element& x) const {
    if (x.is_rational() == prime_mode_) throw CtxMismatch();
}

Element FieldCtx::add(const Element& x, const Element& y) const {
    check(x); check(y);
    if (!prime_mode_) return Element(mpq_class(x.rational() + y.rational()));
    std::uint64_t s = x.residue() + y.residue();   // p < 2^63 would be enough; p < 2^64-1 needs care
    if (s < x.residue() || s >= p_) s -= p_;
    return Element(s);
}

Element FieldCtx::sub(const Element& x, const Element& y) const {
    check(x); check(y);
    if (!prime_mode_) return Element(mpq_class(x.rational() - y.rational()));
    std::uint64_t a = x.residue(), b = y.residue();
    return Element(a >= b ? a - b : a + (p_ - b));
}

Element FieldCtx::mul(const Element& x, const Element& y) const {
    check(x); check(y);
    if (!prime_mode_) return Element(mpq_class(x.rational() * y.rational()));
    return Element(mulmod_u64(x.residue(), y.residue(), p_));
}

Element FieldCtx::neg(const Element& x) const {
    check(x);
    if (!prime_mode_) return Element(mpq_class(-x.rational()));
    return Element(x.residue() == 0 ? 0 : p_ - x.residue());
}

Element FieldCtx::inv(const Element& x) const {
    check(x);
    if (x.is_zero()) throw DivisionByZero();
    if (!prime_mode_) return Element(mpq_class(1 / x.rational()));
    return Element(powmod_u64(x.residue(), p_ - 2, p_));
}

Element FieldCtx::div(const Element& x, const Element& y) const {
    return mul(x, inv(y));
}

bool FieldCtx::char_guard(std::uint64_t n, unsigned exp_num, unsigned exp_den) const {
    if (!prime_mode_) return true;
    // |A| < p^(a/b)  <=>  n^b < p^a, both sides exact.
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), mpz_class(n).get_mpz_t(), exp_den);
    mpz_pow_ui(rhs.get_mpz_t(), mpz_class(p_).get_mpz_t(), exp_num);
    return lhs < rhs;
}

} // namespace shiftlab
