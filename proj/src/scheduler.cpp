#include "polsym/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "polsym/functional.hpp"
#include "polsym/rearrange.hpp"

namespace polsym {

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Converged: return "CONVERGED";
        case RunStatus::MaxSteps: return "MAX_STEPS";
        case RunStatus::FixedPoint: return "FIXED_POINT";
    }
    return "UNKNOWN";
}

IterationResult run_iteration(const GridFunction& u0, const PolarizationSchedule& schedule,
                              const RunOptions& options) {
    if (schedule.steps.empty()) throw std::invalid_argument("run_iteration: empty schedule");
    if (options.eps && !(*options.eps > 0.0)) throw std::invalid_argument("run_iteration: eps must be > 0");
    const double p = options.p;
    const Integrand j = options.integrand ? *options.integrand : Integrand(PowerP{p});

    const GridFunction target = schwarz_symmetrize(u0);
    const ValueMultiset reference = value_multiset(u0);

    ConvergenceReport report;
    report.p = p;
    report.mode = schedule.all_exact() ? PolarizationMode::Exact : PolarizationMode::Interp;
    report.eps = options.eps ? *options.eps
                             : std::max(1e-10 * lp_norm(u0, p), std::numeric_limits<double>::min());

    auto record = [&](std::size_t n, const GridFunction& u, double change, bool full) {
        StepRecord r;
        r.n = n;
        r.lp_dist_ustar = lp_distance(u, target, p);
        r.J = evaluate_functional(u, j);
        r.grad_lp = gradient_lp_norm(u, p);
        r.sweep_change = change;
        r.multiset_ok = value_multiset(u) == reference;
        r.full_sweep = full;
        report.records.push_back(r);
        return r;
    };

    GridFunction u = u0;
    record(0, u, 0.0, false);
    const std::size_t K = schedule.steps.size();
    report.status = RunStatus::MaxSteps;
    for (std::size_t n = 0; n < options.max_steps; ++n) {
        const std::size_t applied = schedule.strategy == Strategy::Cyclic ? K : std::min(n + 1, K);
        GridFunction next = u;
        for (std::size_t k = 0; k < applied; ++k) {
            const auto& step = schedule.steps[k];
            next = polarize(next, step.halfspace, step.certificate);
        }
        const double change = lp_distance(next, u, p);
        u = std::move(next);
        const auto r = record(n + 1, u, change, applied == K);
        if (r.full_sweep && r.sweep_change < report.eps) {
            report.status = RunStatus::FixedPoint;
            break;
        }
        if (r.lp_dist_ustar < report.eps) {
            report.status = RunStatus::Converged;
            break;
        }
    }
    return {std::move(u), std::move(report)};
}

std::vector<std::string> verify_step_invariants(const StepRecord& prev, const StepRecord& next,
                                                PolarizationMode mode, const StepTolerances& tol) {
    std::vector<std::string> violations;
    char buf[256];
    if (mode == PolarizationMode::Exact && !(prev.multiset_ok && next.multiset_ok)) {
        std::snprintf(buf, sizeof buf, "step %zu: value multiset differs from u0", next.n);
        violations.emplace_back(buf);
    }
    const double drift = std::abs(next.grad_lp - prev.grad_lp);
    if (drift > tol.grad_rel * prev.grad_lp && drift > 0.0) {
        std::snprintf(buf, sizeof buf, "step %zu: gradient norm drift %.3e exceeds %.3e relative", next.n,
                      prev.grad_lp > 0.0 ? drift / prev.grad_lp : drift, tol.grad_rel);
        violations.emplace_back(buf);
    }
    const double slack = mode == PolarizationMode::Exact ? tol.exact_distance_slack : tol.interp_distance_slack;
    if (next.lp_dist_ustar > prev.lp_dist_ustar + slack) {
        std::snprintf(buf, sizeof buf, "step %zu: distance to u* grew from %.17e to %.17e", next.n,
                      prev.lp_dist_ustar, next.lp_dist_ustar);
        violations.emplace_back(buf);
    }
    return violations;
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "n,lp_dist_ustar,J,grad_lp,sweep_change,multiset_ok\n";
    char buf[256];
    for (const auto& r : report.records) {
        std::snprintf(buf, sizeof buf, "%zu,%.17e,%.17e,%.17e,%.17e,%d\n", r.n, r.lp_dist_ustar, r.J, r.grad_lp,
                      r.sweep_change, r.multiset_ok ? 1 : 0);
        out << buf;
    }
}

}  // namespace polsym
