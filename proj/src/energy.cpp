#include "shiftlab/energy.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab {

long long RepHistogram::max_count() const {
    long long m = 0;
    for (const auto& [v, c] : counts) m = std::max(m, c);
    return m;
}

RepHistogram rep_function(const FSet& X, const FSet& Y, BinOp op) {
    if (!(X.ctx() == Y.ctx())) throw CtxMismatch();
    if (op == BinOp::ratio && Y.contains_zero()) throw DivisionByZero();
    RepHistogram h{X.ctx(), op, {}, 0};
    for (const auto& x : X.elems())
        for (const auto& y : Y.elems())
            ++h.counts[apply_binop(X.ctx(), op, x, y)];
    h.total_pairs = static_cast<long long>(X.size()) * static_cast<long long>(Y.size());
    return h;
}

RepHistogram rep_from_hist(const RepHistogram& src, const FSet& Y, BinOp op) {
    if (!(src.ctx == Y.ctx())) throw CtxMismatch();
    if (op == BinOp::ratio && Y.contains_zero()) throw DivisionByZero();
    RepHistogram h{src.ctx, op, {}, 0};
    for (const auto& [k, c] : src.counts)
        for (const auto& y : Y.elems())
            h.counts[apply_binop(src.ctx, op, k, y)] += c;
    h.total_pairs = src.total_pairs * static_cast<long long>(Y.size());
    return h;
}

mpz_class energy_moment_int(const RepHistogram& h, long n) {
    if (n < 1) throw BadParams("moment must be >= 1");
    mpz_class total = 0, term;
    for (const auto& [v, c] : h.counts) {
        mpz_pow_ui(term.get_mpz_t(), mpz_class(static_cast<long>(c)).get_mpz_t(),
                   static_cast<unsigned long>(n));
        total += term;
    }
    return total;
}

long double energy_moment(const RepHistogram& h, const Moment& n) {
    if (n.num < n.den) throw BadParams("moment must be >= 1");
    if (n.is_integer()) {
        mpz_class e = energy_moment_int(h, n.as_integer());
        return strtold(e.get_str().c_str(), nullptr);
    }
    long double exponent = n.as_real();
    long double sum = 0, comp = 0; // Kahan
    for (const auto& [v, c] : h.counts) {
        long double term = powl(static_cast<long double>(c), exponent);
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

mpz_class energy_bruteforce(const FSet& X, const FSet& Y, BinOp op, long n) {
    if (n < 1) throw BadParams("moment must be >= 1");
    if (op == BinOp::ratio && Y.contains_zero()) throw DivisionByZero();
    const double pairs = static_cast<double>(X.size()) * static_cast<double>(Y.size());
    if (std::pow(pairs, static_cast<double>(n)) > 1e8)
        throw TooLarge("bruteforce energy: (|X||Y|)^n exceeds 10^8");

    std::vector<Element> vals;
    vals.reserve(X.size() * Y.size());
    for (const auto& x : X.elems())
        for (const auto& y : Y.elems())
            vals.push_back(apply_binop(X.ctx(), op, x, y));

    const std::size_t m = vals.size();
    mpz_class count = 0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    if (m == 0) return n == 0 ? mpz_class(1) : mpz_class(0);
    while (true) {
        bool equal = true;
        for (long i = 1; i < n && equal; ++i)
            equal = vals[idx[static_cast<std::size_t>(i)]] == vals[idx[0]];
        if (equal) ++count;
        // odometer
        long pos = n - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == m) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

DyadicBucket::DyadicBucket(long long t, FSet m, Moment n)
    : tau(t), members(std::move(m)), weight_exponent(n) {
    weight = static_cast<long double>(members.size()) *
             powl(static_cast<long double>(tau), n.as_real());
}

std::vector<DyadicBucket> dyadic_buckets(const RepHistogram& h, Moment weight_exponent) {
    std::map<long long, std::vector<Element>> levels;
    for (const auto& [v, c] : h.counts) {
        long long tau = 1;
        while (2 * tau <= c) tau *= 2;
        levels[tau].push_back(v);
    }
    std::vector<DyadicBucket> out;
    out.reserve(levels.size());
    for (auto& [tau, members] : levels)
        out.emplace_back(tau, FSet(h.ctx, std::move(members)), weight_exponent);
    return out;
}

int pigeonhole_levels(const RepHistogram& h) {
    long long rmax = h.max_count();
    int levels = 1;
    while ((rmax >>= 1) > 0) ++levels;
    return levels;
}

DyadicBucket richest_bucket(const RepHistogram& h, const Moment& n) {
    if (h.counts.empty()) throw EmptyHistogram();
    auto buckets = dyadic_buckets(h, n);
    if (n.is_integer()) {
        // exact comparison; buckets are ascending in tau, so keeping the first
        // strict maximum breaks ties toward smaller tau
        std::size_t best = 0;
        mpz_class best_w = -1, w, t;
        for (std::size_t i = 0; i < buckets.size(); ++i) {
            mpz_pow_ui(t.get_mpz_t(), mpz_class(static_cast<long>(buckets[i].tau)).get_mpz_t(),
                       static_cast<unsigned long>(n.as_integer()));
            w = t * static_cast<unsigned long>(buckets[i].members.size());
            if (w > best_w) { best_w = w; best = i; }
        }
        return buckets[best];
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < buckets.size(); ++i)
        if (buckets[i].weight > buckets[best].weight) best = i;
    return buckets[best];
}

} // namespace shiftlab
