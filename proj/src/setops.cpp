#include "shiftlab/setops.hpp"

#include <algorithm>
#include <sstream>

namespace shiftlab {

const char* to_string(BinOp op) {
    switch (op) {
        case BinOp::sum: return "sum";
        case BinOp::difference: return "difference";
        case BinOp::product: return "product";
        case BinOp::ratio: return "ratio";
    }
    return "?";
}

BinOp binop_from_string(const std::string& s) {
    if (s == "sum") return BinOp::sum;
    if (s == "difference") return BinOp::difference;
    if (s == "product") return BinOp::product;
    if (s == "ratio") return BinOp::ratio;
    throw ParseError("unknown set operation: " + s);
}

FSet::FSet(FieldCtx ctx, std::vector<Element> elems) : ctx_(ctx), elems_(std::move(elems)) {
    for (const auto& e : elems_) {
        if (e.is_rational() == ctx_.is_prime_mode()) throw CtxMismatch();
    }
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool FSet::contains(const Element& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool FSet::contains_zero() const {
    return contains(ctx_.is_prime_mode() ? Element(std::uint64_t{0}) : Element(mpq_class(0)));
}

bool FSet::operator<(const FSet& o) const {
    return std::lexicographical_compare(elems_.begin(), elems_.end(),
                                        o.elems_.begin(), o.elems_.end());
}

std::string FSet::str() const {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i) out << ",";
        out << elems_[i].str();
    }
    out << "}";
    return out.str();
}

Element apply_binop(const FieldCtx& ctx, BinOp op, const Element& x, const Element& y) {
    switch (op) {
        case BinOp::sum: return ctx.add(x, y);
        case BinOp::difference: return ctx.sub(x, y);
        case BinOp::product: return ctx.mul(x, y);
        case BinOp::ratio: return ctx.div(x, y);
    }
    throw Error("unreachable");
}

FSet combine(const FSet& X, const FSet& Y, BinOp op) {
    if (!(X.ctx() == Y.ctx())) throw CtxMismatch();
    if (op == BinOp::ratio && Y.contains_zero()) throw DivisionByZero();
    std::vector<Element> out;
    out.reserve(X.size() * Y.size());
    for (const auto& x : X.elems())
        for (const auto& y : Y.elems())
            out.push_back(apply_binop(X.ctx(), op, x, y));
    return FSet(X.ctx(), std::move(out));
}

FSet shift(const FSet& X, const Element& lambda) {
    std::vector<Element> out;
    out.reserve(X.size());
    for (const auto& x : X.elems()) out.push_back(X.ctx().add(x, lambda));
    return FSet(X.ctx(), std::move(out));
}

FSet dilate(const FSet& X, const Element& lambda) {
    std::vector<Element> out;
    out.reserve(X.size());
    for (const auto& x : X.elems()) out.push_back(X.ctx().mul(x, lambda));
    return FSet(X.ctx(), std::move(out));
}

FSet shifted_product(const FSet& C, const FSet& A, const Element& lambda) {
    return combine(C, shift(A, lambda), BinOp::product);
}

bool dilate_invariance_check(const FSet& C, const FSet& A, const Element& lambda) {
    if (lambda.is_zero()) throw ZeroDilation();
    const FieldCtx& ctx = C.ctx();
    FSet lhs = shifted_product(C, A, ctx.one());
    FSet rhs = combine(C, shift(dilate(A, lambda), lambda), BinOp::product);
    return lhs.size() == rhs.size();
}

namespace {

// "name(arg1,arg2,...)" -> args; empty optional-equivalent via throw
std::vector<std::string> call_args(const std::string& s, const std::string& name) {
    std::string inner = s.substr(name.size() + 1, s.size() - name.size() - 2);
    std::vector<std::string> args;
    std::istringstream in(inner);
    std::string tok;
    while (std::getline(in, tok, ',')) args.push_back(tok);
    return args;
}

bool is_call(const std::string& s, const std::string& name) {
    return s.size() > name.size() + 1 && s.compare(0, name.size() + 1, name + "(") == 0 &&
           s.back() == ')';
}

std::string strip_ws(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

long long parse_ll(const std::string& s) {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw ParseError("bad integer: " + s);
    return v;
}

} // namespace

FieldCtx parse_ctx(const std::string& spec) {
    std::string s = strip_ws(spec);
    if (s == "rational" || s == "0") return FieldCtx::rational();
    if (s.compare(0, 2, "p=") == 0) s = s.substr(2);
    mpz_class p;
    if (p.set_str(s, 10) != 0 || p <= 0 || !p.fits_ulong_p())
        throw ParseError("bad context spec: " + spec);
    return FieldCtx::prime(p.get_ui());
}

FSet parse_set(const FieldCtx& ctx, const std::string& descr) {
    std::string s = strip_ws(descr);
    // Optional context prefix; must agree with ctx.
    if (auto semi = s.find(';'); semi != std::string::npos) {
        FieldCtx declared = parse_ctx(s.substr(0, semi));
        if (!(declared == ctx)) throw CtxMismatch();
        s = s.substr(semi + 1);
        if (s.compare(0, 6, "elems=") == 0) s = s.substr(6);
    }
    if (s.empty()) return FSet(ctx, {});

    if (is_call(s, "gp")) {
        auto args = call_args(s, "gp");
        if (args.size() != 2) throw BadParams("gp(g,n)");
        Element g = ctx.parse(args[0]);
        long long n = parse_ll(args[1]);
        if (n < 0) throw BadParams("gp: n must be >= 0");
        std::vector<Element> out;
        Element cur = ctx.one();
        for (long long i = 0; i < n; ++i) {
            cur = ctx.mul(cur, g);
            out.push_back(cur);
        }
        return FSet(ctx, std::move(out));
    }
    if (is_call(s, "ap")) {
        auto args = call_args(s, "ap");
        if (args.size() != 3) throw BadParams("ap(a,d,n)");
        Element a = ctx.parse(args[0]);
        Element d = ctx.parse(args[1]);
        long long n = parse_ll(args[2]);
        if (n < 0) throw BadParams("ap: n must be >= 0");
        std::vector<Element> out;
        Element cur = a;
        for (long long i = 0; i < n; ++i) {
            out.push_back(cur);
            cur = ctx.add(cur, d);
        }
        return FSet(ctx, std::move(out));
    }
    if (is_call(s, "subgroup") || is_call(s, "coset")) {
        bool coset = is_call(s, "coset");
        auto args = call_args(s, coset ? "coset" : "subgroup");
        if (args.size() != (coset ? 3u : 2u))
            throw BadParams(coset ? "coset(c,g,n)" : "subgroup(g,n)");
        Element c = coset ? ctx.parse(args[0]) : ctx.one();
        Element g = ctx.parse(args[coset ? 1 : 0]);
        long long n = parse_ll(args.back());
        if (n < 0) throw BadParams("subgroup: n must be >= 0");
        if (g.is_zero()) throw BadParams("subgroup generator must be nonzero");
        std::vector<Element> out;
        Element cur = ctx.one();
        for (long long i = 0; i < n; ++i) {
            cur = ctx.mul(cur, g);
            out.push_back(ctx.mul(c, cur));
        }
        FSet r(ctx, std::move(out));
        if (static_cast<long long>(r.size()) != n)
            throw BadParams("subgroup: generator order smaller than requested size");
        return r;
    }

    std::vector<Element> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(ctx.parse(tok));
    return FSet(ctx, std::move(out));
}

} // namespace shiftlab
