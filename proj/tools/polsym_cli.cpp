// polsym: command-line front end for symmetrization, iterated polarization
// and the rearrangement inequality checks.
//
//   polsym generate --kind multi-bump --spec 2,65,65,0.1 --seed 7 --out u.gf
//   polsym symmetrize --in u.gf --out ustar.gf
//   polsym polarize-run --in u.gf --schedule auto --family exact --steps 200 \
//          --p 2 --report run.csv --out final.gf
//   polsym verify ps --in u.gf --integrand power:p=2 --tol 1e-9
//   polsym verify aniso --in u.gf --exponents 1.5,3 --tol 1e-9
//   polsym verify equality --in u.gf --integrand power:p=2 --p 2 --tol 1e-9
//
// verify ps exits 0 when the inequality holds, 2 when it fails and 3 when it
// fails for an integrand that does not meet the admissibility conditions.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "polsym/functional.hpp"
#include "polsym/grid.hpp"
#include "polsym/grid_io.hpp"
#include "polsym/rearrange.hpp"
#include "polsym/schedule.hpp"
#include "polsym/scheduler.hpp"
#include "polsym/verify.hpp"

namespace {

using namespace polsym;

void print(const char* key, double value) { std::printf("%s=%.17e\n", key, value); }
void print(const char* key, const std::string& value) { std::printf("%s=%s\n", key, value.c_str()); }
void print_flag(const char* key, bool value) { std::printf("%s=%s\n", key, value ? "true" : "false"); }

GeneratorParams parse_params(const std::vector<std::string>& items) {
    GeneratorParams params;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("--param expects key=value, got '" + item + "'");
        try {
            params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("--param: bad number in '" + item + "'");
        }
    }
    return params;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw Error("bad number '" + item + "' in list '" + text + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void print_admissibility(const AdmissibilityReport& a) {
    print_flag("continuous_in_s", a.continuous_in_s);
    print_flag("convex_in_t", a.convex_in_t);
    print_flag("nondecreasing_in_t", a.nondecreasing_in_t);
}

int report_verdict(const InequalityVerdict& v) {
    print("J_u", v.J_u);
    print("J_ustar", v.J_ustar);
    print("slack", v.slack);
    print("tolerance", v.tolerance);
    print_admissibility(v.admissibility);
    print("verdict", to_string(v.verdict));
    switch (v.verdict) {
        case VerdictClass::Holds: return 0;
        case VerdictClass::Fails: return 2;
        case VerdictClass::HypothesisNotMet: return 3;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schwarz symmetrization, polarization and Polya-Szego checks on grid functions"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

    // generate
    auto* gen = app.add_subcommand("generate", "Write a test function");
    std::string kind, spec_text, out_path;
    std::uint64_t seed = 0;
    std::vector<std::string> param_items;
    gen->add_option("--kind", kind, "gaussian-bump|multi-bump|plateau|radial-translate|indicator-union")->required();
    gen->add_option("--spec", spec_text, "d,n1..nd,h")->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--param", param_items, "generator parameter key=value (repeatable)");
    gen->add_option("--out", out_path, "output grid file")->required();

    // symmetrize
    auto* sym = app.add_subcommand("symmetrize", "Schwarz-symmetrize a grid function");
    std::string in_path;
    sym->add_option("--in", in_path, "input grid file")->required();
    sym->add_option("--out", out_path, "output grid file")->required();

    // polarize-run
    auto* run = app.add_subcommand("polarize-run", "Iterate polarizations toward u*");
    std::string schedule_arg = "auto", family = "exact", strategy = "cyclic", report_path, schedule_out;
    std::optional<std::string> integrand_text;
    std::size_t steps = 200, count = 0;
    std::optional<double> eps;
    double p = 2.0;
    run->add_option("--in", in_path, "input grid file")->required();
    run->add_option("--schedule", schedule_arg, "'auto' or a schedule file");
    run->add_option("--family", family, "exact|mixed (auto schedules)");
    run->add_option("--strategy", strategy, "cyclic|triangular");
    run->add_option("--count", count, "auto schedule length (default 4x the exact family)");
    run->add_option("--seed", seed, "auto schedule seed");
    run->add_option("--steps", steps, "maximum number of steps");
    run->add_option("--eps", eps, "stopping threshold (default 1e-10 ||u0||_p)");
    run->add_option("--p", p, "Lebesgue exponent for distances and gradient norms");
    run->add_option("--integrand", integrand_text, "integrand for the J column");
    run->add_option("--report", report_path, "CSV report path")->required();
    run->add_option("--out", out_path, "final iterate")->required();
    run->add_option("--schedule-out", schedule_out, "write the schedule used");

    // verify
    auto* verify = app.add_subcommand("verify", "Inequality and equality-case checks");
    verify->require_subcommand(1);
    double tol = 1e-9;
    std::string integrand_spec, exponents_text;

    auto* ps = verify->add_subcommand("ps", "J(u*) <= J(u)");
    ps->add_option("--in", in_path, "input grid file")->required();
    ps->add_option("--integrand", integrand_spec, "integrand spec")->required();
    ps->add_option("--tol", tol, "relative tolerance");

    auto* aniso = verify->add_subcommand("aniso", "anisotropic sums");
    aniso->add_option("--in", in_path, "input grid file")->required();
    aniso->add_option("--exponents", exponents_text, "p1,p2,...")->required();
    aniso->add_option("--tol", tol, "relative tolerance");

    auto* eq = verify->add_subcommand("equality", "equality-case analysis");
    eq->add_option("--in", in_path, "input grid file")->required();
    eq->add_option("--integrand", integrand_spec, "integrand spec")->required();
    eq->add_option("--p", p, "gradient norm exponent");
    eq->add_option("--tol", tol, "tolerance");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*gen) {
            const auto spec = parse_grid_spec(spec_text);
            const auto u = generate_test_function(parse_function_kind(kind), parse_params(param_items), spec, seed);
            save_grid(out_path, u);
            return 0;
        }
        if (*sym) {
            save_grid(out_path, schwarz_symmetrize(load_grid(in_path)));
            return 0;
        }
        if (*run) {
            const auto u0 = load_grid(in_path);
            PolarizationSchedule schedule;
            if (schedule_arg == "auto") {
                const std::size_t k = count ? count : 4 * exact_family(u0.spec()).size();
                schedule = generate_schedule(u0.spec(), k, seed, parse_schedule_family(family), parse_strategy(strategy));
            } else {
                std::ifstream sin(schedule_arg);
                if (!sin) throw Error("cannot open schedule '" + schedule_arg + "'");
                schedule = read_schedule(sin, u0.spec());
                schedule.strategy = parse_strategy(strategy);
            }
            if (!schedule_out.empty()) {
                std::ofstream sout(schedule_out);
                write_schedule(sout, schedule);
            }
            RunOptions options;
            options.p = p;
            options.max_steps = steps;
            options.eps = eps;
            if (integrand_text) options.integrand = parse_integrand(*integrand_text);
            const auto result = run_iteration(u0, schedule, options);
            std::ofstream rout(report_path);
            if (!rout) throw Error("cannot open '" + report_path + "' for writing");
            write_report_csv(rout, result.report);
            save_grid(out_path, result.final);
            const auto& last = result.report.records.back();
            print("status", to_string(result.report.status));
            print("steps", static_cast<double>(last.n));
            print("lp_dist_ustar", last.lp_dist_ustar);
            print("J", last.J);
            print("grad_lp", last.grad_lp);
            return 0;
        }
        if (*ps) return report_verdict(check_polya_szego(load_grid(in_path), parse_integrand(integrand_spec), tol));
        if (*aniso) {
            const auto exps = parse_list(exponents_text);
            return report_verdict(check_anisotropic(load_grid(in_path), exps, tol));
        }
        if (*eq) {
            const auto u = load_grid(in_path);
            const auto f = analyze_equality_case(u, parse_integrand(integrand_spec), p, tol);
            print("status", to_string(f.status));
            print("J_u", f.J_u);
            print("J_ustar", f.J_ustar);
            print("grad_lp_u", f.grad_lp_u);
            print("grad_lp_ustar", f.grad_lp_ustar);
            if (f.norms_match) print_flag("norms_match", *f.norms_match);
            print("critical_set_measure", f.critical_set_measure);
            if (f.translation) {
                std::printf("translation_cells=");
                const int dim = u.spec().dim();
                for (int a = 0; a < dim; ++a)
                    std::printf("%s%lld", a ? "," : "", static_cast<long long>((*f.translation)[static_cast<std::size_t>(a)]));
                std::printf("\n");
            }
            print("residual", f.residual);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "polsym: %s\n", e.what());
        return 1;
    }
    return 1;
}
