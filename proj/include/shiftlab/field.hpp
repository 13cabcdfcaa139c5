#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "shiftlab/errors.hpp"

namespace shiftlab {

/// A field element in canonical form: a residue in [0, p) in prime mode,
/// a reduced fraction in rational mode. Equality and ordering are structural,
/// so elements are usable as sorted-container keys.
class Element {
public:
    Element() : v_(std::uint64_t{0}) {}
    explicit Element(std::uint64_t residue) : v_(residue) {}
    explicit Element(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }

    bool is_zero() const;
    std::string str() const;

    bool operator==(const Element& o) const;
    bool operator<(const Element& o) const;

private:
    std::variant<std::uint64_t, mpq_class> v_;
};

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// The ambient arithmetic: F_p for a verified prime p, or the rationals.
/// Immutable; all element operations are exact.
class FieldCtx {
public:
    static FieldCtx prime(std::uint64_t p);
    static FieldCtx rational();

    bool is_prime_mode() const { return prime_mode_; }
    std::uint64_t modulus() const { return p_; }

    bool operator==(const FieldCtx& o) const {
        return prime_mode_ == o.prime_mode_ && p_ == o.p_;
    }

    Element zero() const;
    Element one() const;
    Element from_int(long long n) const;
    Element from_mpz(const mpz_class& n) const;
    /// Parses "5", "-3", or (rational mode) "3/4".
    Element parse(const std::string& s) const;

    Element add(const Element& x, const Element& y) const;
    Element sub(const Element& x, const Element& y) const;
    Element mul(const Element& x, const Element& y) const;
    Element div(const Element& x, const Element& y) const;
    Element neg(const Element& x) const;
    Element inv(const Element& x) const;

    /// True iff rational mode, or n^b < p^a where exponent = a/b.
    /// Exact integer arithmetic; strict inequality.
    bool char_guard(std::uint64_t n, unsigned exp_num, unsigned exp_den) const;

private:
    FieldCtx(bool prime_mode, std::uint64_t p) : prime_mode_(prime_mode), p_(p) {}
    void check(const Element& x) const;

    bool prime_mode_;
    std::uint64_t p_;
};

} // namespace shiftlab
