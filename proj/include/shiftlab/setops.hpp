#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "shiftlab/field.hpp"

namespace shiftlab {

enum class BinOp { sum, difference, product, ratio };

const char* to_string(BinOp op);
BinOp binop_from_string(const std::string& s);

/// A finite deduplicated set of field elements, stored sorted by canonical
/// key. Immutable after construction; set equality is sequence equality.
class FSet {
public:
    FSet(FieldCtx ctx, std::vector<Element> elems);

    const FieldCtx& ctx() const { return ctx_; }
    const std::vector<Element>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(const Element& x) const;
    bool contains_zero() const;

    bool operator==(const FSet& o) const { return ctx_ == o.ctx_ && elems_ == o.elems_; }
    bool operator<(const FSet& o) const;

    std::string str() const;

private:
    FieldCtx ctx_;
    std::vector<Element> elems_;
};

/// x op y in the given context; ratio throws DivisionByZero on y = 0.
Element apply_binop(const FieldCtx& ctx, BinOp op, const Element& x, const Element& y);

FSet combine(const FSet& X, const FSet& Y, BinOp op);
FSet shift(const FSet& X, const Element& lambda);
FSet dilate(const FSet& X, const Element& lambda);

/// C(A + lambda).
FSet shifted_product(const FSet& C, const FSet& A, const Element& lambda);

/// |C(A+1)| = |C(lambda*A + lambda)| for lambda != 0; must always return true.
bool dilate_invariance_check(const FSet& C, const FSet& A, const Element& lambda);

/// Set-description grammar:
///   optional "p=<modulus>;" or "rational;" prefix (must agree with ctx), then
///   a comma list of element literals, or one of
///   gp(g,n)              geometric progression {g^1 .. g^n}
///   ap(a,d,n)            arithmetic progression {a, a+d, .., a+(n-1)d}
///   subgroup(g,n)        powers of g, truncated to n distinct elements
///   coset(c,g,n)         c * subgroup(g,n)
FSet parse_set(const FieldCtx& ctx, const std::string& descr);

/// Parses a standalone "p=<modulus>" / "rational" context spec.
FieldCtx parse_ctx(const std::string& spec);

} // namespace shiftlab
