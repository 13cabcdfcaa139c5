#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "shiftlab/report.hpp"

using namespace shiftlab;

namespace {

struct CommonOpts {
    std::string ctx_spec = "rational";
    std::string out_path;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--p", c.ctx_spec, "prime modulus, or 'rational'");
    cmd->add_option("--out", c.out_path, "write the report to this file instead of stdout");
    cmd->add_option("--format", c.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(c.out_path);
    if (!out) throw BadParams("cannot open output file: " + c.out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-set laboratory for shifted product growth"};
    app.require_subcommand(1);

    CommonOpts energy_c, decomp_c, refine_c, inc_c, verify_c, trace_c, search_c, cor_c;

    // --- energy ------------------------------------------------------------
    auto* energy_cmd = app.add_subcommand("energy", "moment energy of a representation histogram");
    std::string energy_A, energy_D, energy_op = "ratio";
    long energy_num = 2, energy_den = 1;
    bool energy_hist = false;
    add_common(energy_cmd, energy_c);
    energy_cmd->add_option("--A", energy_A, "left set descriptor")->required();
    energy_cmd->add_option("--D", energy_D, "right set descriptor")->required();
    energy_cmd->add_option("--op", energy_op, "ratio|product|sum|difference");
    energy_cmd->add_option("--n", energy_num, "moment numerator");
    energy_cmd->add_option("--den", energy_den, "moment denominator");
    energy_cmd->add_flag("--histogram", energy_hist, "include the full histogram in the report");

    // --- decompose ----------------------------------------------------------
    auto* decomp_cmd = app.add_subcommand("decompose", "popular product set P and popular subset A'");
    std::string decomp_A, decomp_B;
    add_common(decomp_cmd, decomp_c);
    decomp_cmd->add_option("--A", decomp_A)->required();
    decomp_cmd->add_option("--B", decomp_B)->required();

    // --- refine ---------------------------------------------------------------
    auto* refine_cmd = app.add_subcommand("refine", "4/3-energy refinement iteration");
    std::string refine_A, refine_B;
    bool refine_force = false;
    add_common(refine_cmd, refine_c);
    refine_cmd->add_option("--A", refine_A)->required();
    refine_cmd->add_option("--B", refine_B)->required();
    refine_cmd->add_flag("--force", refine_force, "run outside the guarantee regime");

    // --- incidence --------------------------------------------------------------
    auto* inc_cmd = app.add_subcommand("incidence", "incidence counts and the point-line bound");
    std::string inc_A, inc_C, inc_D;
    add_common(inc_cmd, inc_c);
    inc_cmd->add_option("--A", inc_A)->required();
    inc_cmd->add_option("--C", inc_C)->required();
    inc_cmd->add_option("--D", inc_D)->required();

    // --- verify ----------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "theorem-instance verification");
    std::string verify_thm = "shift", verify_A, verify_B, verify_C, verify_D;
    add_common(verify_cmd, verify_c);
    verify_cmd->add_option("--thm", verify_thm, "e4|e2|shift")
        ->check(CLI::IsMember({"e4", "e2", "shift"}));
    verify_cmd->add_option("--A", verify_A)->required();
    verify_cmd->add_option("--B", verify_B);
    verify_cmd->add_option("--C", verify_C)->required();
    verify_cmd->add_option("--D", verify_D)->required();

    // --- trace -----------------------------------------------------------------
    auto* trace_cmd = app.add_subcommand("trace", "full proof-chain trace for one instance");
    std::string trace_A, trace_B, trace_C, trace_D;
    bool trace_force = false;
    add_common(trace_cmd, trace_c);
    trace_cmd->add_option("--A", trace_A)->required();
    trace_cmd->add_option("--B", trace_B)->required();
    trace_cmd->add_option("--C", trace_C)->required();
    trace_cmd->add_option("--D", trace_D)->required();
    trace_cmd->add_flag("--force", trace_force, "allow small sets outside the guarantee regime");

    // --- search ------------------------------------------------------------------
    auto* search_cmd = app.add_subcommand("search", "extremal-set search");
    std::string search_mode = "exhaustive", search_obj = "shift_product", search_start;
    unsigned search_n = 3, search_steps = 200, search_jobs = 1;
    std::uint64_t search_seed = 0;
    std::string search_ledger;
    add_common(search_cmd, search_c);
    search_cmd->add_option("--mode", search_mode, "exhaustive|hill_climb")
        ->check(CLI::IsMember({"exhaustive", "hill_climb"}));
    search_cmd->add_option("--objective", search_obj, "shift_product|two_products");
    search_cmd->add_option("--n", search_n, "subset size (exhaustive)");
    search_cmd->add_option("--start", search_start, "start set descriptor (hill_climb)");
    search_cmd->add_option("--steps", search_steps, "hill climb steps");
    search_cmd->add_option("--seed", search_seed, "RNG seed");
    search_cmd->add_option("--jobs", search_jobs, "worker parallelism");
    search_cmd->add_option("--ledger", search_ledger, "append a CSV row to this ledger file");

    // --- corollary -------------------------------------------------------------
    auto* cor_cmd = app.add_subcommand("corollary", "growth exponents for one set");
    std::string cor_A;
    add_common(cor_cmd, cor_c);
    cor_cmd->add_option("--A", cor_A)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*energy_cmd) {
            FieldCtx ctx = parse_ctx(energy_c.ctx_spec);
            FSet A = parse_set(ctx, energy_A), D = parse_set(ctx, energy_D);
            RepHistogram h = rep_function(A, D, binop_from_string(energy_op));
            Moment n{energy_num, energy_den};
            json j{{"op", energy_op},
                   {"moment", std::to_string(energy_num) + "/" + std::to_string(energy_den)}};
            if (n.is_integer())
                j["energy"] = energy_moment_int(h, n.as_integer()).get_str();
            else
                j["energy"] = static_cast<double>(energy_moment(h, n));
            if (energy_hist) j["histogram"] = to_json(h);
            emit(energy_c, j.dump(2));
        } else if (*decomp_cmd) {
            FieldCtx ctx = parse_ctx(decomp_c.ctx_spec);
            FSet A = parse_set(ctx, decomp_A), B = parse_set(ctx, decomp_B);
            PopularityDecomposition d = popular_decompose(A, B);
            emit(decomp_c, to_json(d).dump(2));
        } else if (*refine_cmd) {
            FieldCtx ctx = parse_ctx(refine_c.ctx_spec);
            FSet A = parse_set(ctx, refine_A), B = parse_set(ctx, refine_B);
            RefineResult rr = refine_43(A, B, refine_force);
            PopularityDecomposition d = popular_decompose(rr.A1.size() >= 3 ? rr.A1 : A, B);
            emit(refine_c, to_json(d, &rr).dump(2));
        } else if (*inc_cmd) {
            FieldCtx ctx = parse_ctx(inc_c.ctx_spec);
            FSet A = parse_set(ctx, inc_A), C = parse_set(ctx, inc_C), D = parse_set(ctx, inc_D);
            RepHistogram h = rep_function(A, D, BinOp::ratio);
            DyadicBucket bucket = richest_bucket(h, Moment{4, 1});
            PointGrid grid{shifted_product(C, A, ctx.one()), bucket.members};
            LineFamily lines = shift_lines(D, C);
            long long inc_bf = count_incidences(grid, lines, IncidenceMethod::bruteforce);
            long long inc_h = count_incidences(grid, lines, IncidenceMethod::hashed);
            SdzBound b = sdz_bound(grid.X.size(), grid.Y.size(), lines.lines.size(),
                                   ctx.is_prime_mode() ? ctx.modulus() : 0);
            json j{{"grid", {grid.X.size(), grid.Y.size()}},
                   {"lines", lines.lines.size()},
                   {"tau", bucket.tau},
                   {"incidences_bruteforce", inc_bf},
                   {"incidences_hashed", inc_h},
                   {"lower_identity", static_cast<long long>(bucket.members.size()) * bucket.tau *
                                          static_cast<long long>(C.size())},
                   {"sdz_bound", static_cast<double>(b.value)},
                   {"sdz_cond_p", b.cond_p},
                   {"sdz_cond_sizes", b.cond_sizes},
                   {"construction_check", construction_identity_check(A, D, C, bucket)},
                   {"swapped_check", swapped_construction_check(A, D, C, bucket)}};
            emit(inc_c, j.dump(2));
        } else if (*verify_cmd) {
            FieldCtx ctx = parse_ctx(verify_c.ctx_spec);
            FSet A = parse_set(ctx, verify_A), C = parse_set(ctx, verify_C),
                 D = parse_set(ctx, verify_D);
            VerificationReport r;
            if (verify_thm == "e4") {
                r = verify_e4(A, C, D);
            } else if (verify_thm == "e2") {
                r = verify_e2(A, C, D);
            } else {
                if (verify_B.empty()) throw CLI::ValidationError("--B is required for --thm shift");
                r = verify_shift(A, parse_set(ctx, verify_B), C, D);
            }
            emit(verify_c, to_json(r).dump(2));
        } else if (*trace_cmd) {
            FieldCtx ctx = parse_ctx(trace_c.ctx_spec);
            FSet A = parse_set(ctx, trace_A), B = parse_set(ctx, trace_B),
                 C = parse_set(ctx, trace_C), D = parse_set(ctx, trace_D);
            ProofTrace t = proof_trace_shift(A, B, C, D, trace_force);
            if (trace_c.format == "csv")
                emit(trace_c, trace_to_csv(trace_A, t));
            else
                emit(trace_c, to_json(t).dump(2));
        } else if (*search_cmd) {
            FieldCtx ctx = parse_ctx(search_c.ctx_spec);
            if (!ctx.is_prime_mode()) throw BadParams("search needs a prime modulus");
            SearchRecord rec;
            if (search_mode == "exhaustive") {
                rec = exhaustive(ctx.modulus(), search_n, objective_from_string(search_obj),
                                 search_jobs);
            } else {
                FSet start = parse_set(ctx, search_start);
                rec = hill_climb(start, objective_from_string(search_obj), search_steps,
                                 search_seed);
            }
            if (!search_ledger.empty()) {
                std::ofstream ledger(search_ledger, std::ios::app);
                ledger << search_record_csv_row(ctx.modulus(), rec);
            }
            emit(search_c, to_json(rec).dump(2));
        } else if (*cor_cmd) {
            FieldCtx ctx = parse_ctx(cor_c.ctx_spec);
            FSet A = parse_set(ctx, cor_A);
            CorollaryReport r = verify_corollary(A);
            json j{{"shift_product", to_json(r.shift_product)},
                   {"two_products", to_json(r.two_products)}};
            emit(cor_c, j.dump(2));
        }
    } catch (const ExactStepViolation& e) {
        std::cerr << "exact identity violated: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const BadParams& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
