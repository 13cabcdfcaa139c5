#include "shiftlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

namespace shiftlab {

const char* to_string(Objective o) {
    return o == Objective::shift_product ? "shift_product" : "two_products";
}

Objective objective_from_string(const std::string& s) {
    if (s == "shift_product") return Objective::shift_product;
    if (s == "two_products") return Objective::two_products;
    throw ParseError("unknown objective: " + s);
}

unsigned long objective_size(const FSet& A, Objective o) {
    const FieldCtx& ctx = A.ctx();
    FSet a1 = shift(A, ctx.one());
    if (o == Objective::shift_product) return combine(A, a1, BinOp::product).size();
    return combine(A, A, BinOp::product).size() + combine(a1, a1, BinOp::product).size();
}

double objective_value(const FSet& A, Objective o) {
    unsigned long f = objective_size(A, o);
    if (A.size() <= 1) return static_cast<double>(f);
    return std::log(static_cast<double>(f)) / std::log(static_cast<double>(A.size()));
}

namespace {

SearchRecord make_record(const FSet& A, Objective o, std::uint64_t seed, std::string gen) {
    SearchRecord r;
    r.set_descr = A.str();
    r.objective = o;
    r.set_size = A.size();
    r.raw_size = objective_size(A, o);
    r.value = objective_value(A, o);
    r.seed = seed;
    r.generator = std::move(gen);
    return r;
}

// (value, set) ordering with lexicographic tie-break on the set
bool better(const std::pair<double, FSet>& a, const std::pair<double, FSet>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
}

} // namespace

SearchRecord exhaustive(std::uint64_t p, unsigned n, Objective o, unsigned jobs) {
    FieldCtx ctx = FieldCtx::prime(p);
    if (n == 0 || n >= p) throw BadParams("exhaustive: need 1 <= n < p");
    // candidate count C(p-1, n)
    double cand = 1;
    for (unsigned i = 0; i < n; ++i) cand *= static_cast<double>(p - 1 - i) / (i + 1);
    if (cand > 1e7) throw TooLarge("exhaustive: C(p-1, n) exceeds 10^7");

    const std::uint64_t u = p - 1; // universe {1, .., p-1}
    if (jobs == 0) jobs = 1;

    // Parallelize over the first chosen element; each worker scans a stripe of
    // first elements and reports its local best. Merge order is fixed, so the
    // result does not depend on the schedule.
    auto worker = [&](unsigned stripe) {
        std::vector<std::uint64_t> idx(n);
        std::pair<double, FSet> best{std::numeric_limits<double>::infinity(), FSet(ctx, {})};
        for (std::uint64_t first = 1 + stripe; first <= u - n + 1; first += jobs) {
            idx[0] = first;
            for (unsigned i = 1; i < n; ++i) idx[i] = first + i;
            while (true) {
                std::vector<Element> elems;
                elems.reserve(n);
                for (auto v : idx) elems.push_back(ctx.from_int(static_cast<long long>(v)));
                FSet A(ctx, std::move(elems));
                std::pair<double, FSet> cur{objective_value(A, o), A};
                if (better(cur, best)) best = std::move(cur);
                // advance positions 1..n-1 (position 0 fixed per stripe step)
                int pos = static_cast<int>(n) - 1;
                while (pos >= 1 && idx[static_cast<std::size_t>(pos)] ==
                                       u - (n - 1 - static_cast<unsigned>(pos))) {
                    --pos;
                }
                if (pos < 1) break;
                ++idx[static_cast<std::size_t>(pos)];
                for (unsigned i = static_cast<unsigned>(pos) + 1; i < n; ++i)
                    idx[i] = idx[i - 1] + 1;
            }
        }
        return best;
    };

    std::vector<std::future<std::pair<double, FSet>>> futs;
    for (unsigned s = 1; s < jobs; ++s)
        futs.push_back(std::async(std::launch::async, worker, s));
    std::pair<double, FSet> best = worker(0);
    for (auto& f : futs) {
        auto local = f.get();
        if (local.second.empty()) continue; // stripe had no candidates
        if (better(local, best)) best = std::move(local);
    }
    return make_record(best.second, o, 0, "exhaustive(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")");
}

Element element_of_order(const FieldCtx& ctx, unsigned long n) {
    if (!ctx.is_prime_mode()) throw BadParams("subgroups need a prime modulus");
    std::uint64_t p = ctx.modulus();
    if (n == 0 || (p - 1) % n != 0) throw BadParams("subgroup order must divide p-1");
    // factor n, then search g with g^n = 1 and g^{n/q} != 1 for all prime q | n
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t m = n;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            prime_factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (std::uint64_t base = 2; base < p; ++base) {
        std::uint64_t g = powmod_u64(base, (p - 1) / n, p);
        if (g == 1) continue;
        bool exact = true;
        for (auto q : prime_factors)
            if (powmod_u64(g, n / q, p) == 1) { exact = false; break; }
        if (exact) return Element(g);
    }
    throw BadParams("no element of the requested order");
}

FSet generate_family(const FieldCtx& ctx, FamilyKind kind, const FamilyParams& params) {
    std::vector<Element> out;
    switch (kind) {
        case FamilyKind::geometric: {
            if (params.start.is_zero()) throw BadParams("geometric ratio must be nonzero");
            Element cur = ctx.one();
            for (unsigned long i = 0; i < params.order; ++i) {
                cur = ctx.mul(cur, params.start);
                out.push_back(cur);
            }
            break;
        }
        case FamilyKind::arithmetic: {
            Element cur = params.start;
            for (unsigned long i = 0; i < params.order; ++i) {
                out.push_back(cur);
                cur = ctx.add(cur, params.step);
            }
            break;
        }
        case FamilyKind::subgroup:
        case FamilyKind::subgroup_coset: {
            Element g = element_of_order(ctx, params.order);
            Element c = kind == FamilyKind::subgroup_coset ? params.start : ctx.one();
            if (c.is_zero()) throw BadParams("coset representative must be nonzero");
            Element cur = ctx.one();
            for (unsigned long i = 0; i < params.order; ++i) {
                cur = ctx.mul(cur, g);
                out.push_back(ctx.mul(c, cur));
            }
            break;
        }
    }
    FSet r(ctx, std::move(out));
    if (r.size() != params.order) throw BadParams("family degenerated below requested size");
    return r;
}

SearchRecord hill_climb(const FSet& start, Objective o, unsigned steps, std::uint64_t seed) {
    if (start.size() < 2) throw BadParams("hill_climb needs |start| >= 2");
    const FieldCtx& ctx = start.ctx();
    if (!ctx.is_prime_mode()) throw BadParams("hill_climb runs over prime fields");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick_elem(0, start.size() - 1);
    std::uniform_int_distribution<std::uint64_t> pick_field(1, ctx.modulus() - 1);

    FSet cur = start;
    double cur_val = objective_value(cur, o);
    for (unsigned s = 0; s < steps; ++s) {
        std::vector<Element> elems = cur.elems();
        Element candidate = ctx.from_int(static_cast<long long>(pick_field(rng)));
        if (cur.contains(candidate)) continue;
        elems[pick_elem(rng)] = candidate;
        FSet next(ctx, std::move(elems));
        if (next.size() != cur.size()) continue;
        double v = objective_value(next, o);
        if (v < cur_val) {
            cur = std::move(next);
            cur_val = v;
        }
    }
    return make_record(cur, o, seed, "hill_climb(steps=" + std::to_string(steps) + ")");
}

} // namespace shiftlab
