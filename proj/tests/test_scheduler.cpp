#include <doctest.h>

#include <deque>
#include <set>
#include <sstream>

#include "polsym/functional.hpp"
#include "polsym/grid.hpp"
#include "polsym/rearrange.hpp"
#include "polsym/schedule.hpp"
#include "polsym/scheduler.hpp"
#include "support.hpp"

using namespace polsym;
using namespace testsupport;

namespace {

std::vector<double> vec(const GridFunction& u) { return {u.values().begin(), u.values().end()}; }

PolarizationSchedule family_schedule(const GridSpec& spec, Strategy strategy = Strategy::Cyclic) {
    PolarizationSchedule s;
    s.steps = exact_family(spec);
    s.strategy = strategy;
    return s;
}

}  // namespace

TEST_CASE("a symmetric decreasing start is a fixed point after one sweep") {
    const auto u = schwarz_symmetrize(random_smooth(unit_grid(2, 33), 4));
    const auto result = run_iteration(u, generate_schedule(u.spec(), 50, 1, ScheduleFamily::Exact));
    CHECK(result.report.status == RunStatus::FixedPoint);
    CHECK(result.report.records.size() == 2);
    CHECK(result.final == u);
    CHECK(result.report.records[0].n == 0);
    CHECK(result.report.records[0].sweep_change == 0.0);
}

TEST_CASE("reachable states of a 7-cell line have the symmetrization as the only fixed point") {
    // Oracle: breadth-first search over every arrangement reachable by any
    // sequence of family polarizations.
    const auto spec = line(7, 1.0);
    const GridFunction u0(spec, {0, 1, 0, 2, 3, 0, 0});
    const auto family = exact_family(spec);
    std::set<std::vector<double>> seen{vec(u0)};
    std::deque<GridFunction> queue{u0};
    std::vector<std::vector<double>> fixed;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        bool stuck = true;
        for (const auto& m : family) {
            const auto v = polarize(u, m.halfspace, m.certificate);
            if (v == u) continue;
            stuck = false;
            if (seen.insert(vec(v)).second) queue.push_back(v);
        }
        if (stuck) fixed.push_back(vec(u));
    }
    CHECK(seen.size() > 3);
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0] == brute_symmetrize(u0));

    for (auto strategy : {Strategy::Cyclic, Strategy::Triangular}) {
        const auto result = run_iteration(u0, family_schedule(spec, strategy));
        CHECK(vec(result.final) == fixed[0]);
        CHECK(result.report.status != RunStatus::MaxSteps);
    }
}

TEST_CASE("cyclic and triangular strategies agree on small 1D inputs") {
    const auto spec = line(7, 1.0);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> v(0, 3);
        std::vector<double> vals(7, 0.0);
        for (int i = 1; i < 6; ++i) vals[static_cast<std::size_t>(i)] = v(rng);
        const GridFunction u0(spec, vals);
        const auto cyc = run_iteration(u0, family_schedule(spec, Strategy::Cyclic));
        const auto tri = run_iteration(u0, family_schedule(spec, Strategy::Triangular));
        CHECK(cyc.final == tri.final);
        CHECK(vec(cyc.final) == brute_symmetrize(u0));
    }
}

TEST_CASE("exact runs keep the multiset and approach u* monotonically") {
    const auto u0 = generate_test_function(FunctionKind::MultiBump, {}, unit_grid(2, 33), 2);
    const auto sched = generate_schedule(u0.spec(), 2 * exact_family(u0.spec()).size(), 9, ScheduleFamily::Exact);
    RunOptions opt;
    opt.max_steps = 6;
    const auto result = run_iteration(u0, sched, opt);
    const auto& recs = result.report.records;
    CHECK(result.report.mode == PolarizationMode::Exact);
    CHECK(recs.back().lp_dist_ustar < recs.front().lp_dist_ustar);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        CHECK(recs[i].multiset_ok);
        CHECK(recs[i].full_sweep);
        CHECK(recs[i].lp_dist_ustar <= recs[i - 1].lp_dist_ustar + 1e-12);
        CHECK(verify_step_invariants(recs[i - 1], recs[i], PolarizationMode::Exact).empty());
    }
}

TEST_CASE("mixed runs end no farther from u* than they start") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto u0 = generate_test_function(FunctionKind::MultiBump, {}, unit_grid(2, 33), seed);
        const auto sched = generate_schedule(u0.spec(), 200, seed, ScheduleFamily::Mixed);
        RunOptions opt;
        opt.max_steps = 3;
        const auto result = run_iteration(u0, sched, opt);
        CHECK(result.report.mode == PolarizationMode::Interp);
        CHECK(result.report.records.back().lp_dist_ustar <= result.report.records.front().lp_dist_ustar);
    }
}

TEST_CASE("stopping rules") {
    const auto spec = line(7, 1.0);
    const GridFunction u0(spec, {0, 1, 3, 2, 0, 0, 0});
    // Reaching u* exactly during a sweep that still moved values converges.
    const auto conv = run_iteration(u0, family_schedule(spec));
    CHECK(conv.report.status == RunStatus::Converged);
    CHECK(conv.report.records.back().lp_dist_ustar == 0.0);

    const auto u2 = generate_test_function(FunctionKind::MultiBump, {}, unit_grid(2, 33), 1);
    RunOptions one;
    one.max_steps = 1;
    const auto capped = run_iteration(u2, generate_schedule(u2.spec(), 10, 1, ScheduleFamily::Exact), one);
    CHECK(capped.report.status == RunStatus::MaxSteps);
    CHECK(capped.report.records.size() == 2);

    // A triangular step is not a full sweep until it applies the whole
    // list, so a symmetric start stops on the distance test instead.
    auto tri = family_schedule(spec, Strategy::Triangular);
    const auto sym = schwarz_symmetrize(u0);
    const auto t = run_iteration(sym, tri);
    CHECK(t.report.status == RunStatus::Converged);
    CHECK(t.report.records.size() == 2);
    CHECK_FALSE(t.report.records[1].full_sweep);

    RunOptions bad;
    bad.eps = 0.0;
    CHECK_THROWS_AS(run_iteration(u0, tri, bad), std::invalid_argument);
    CHECK_THROWS_AS(run_iteration(u0, PolarizationSchedule{}), std::invalid_argument);
}

TEST_CASE("default threshold scales with the input") {
    const auto spec = line(7, 1.0);
    const GridFunction u0(spec, {0, 1, 3, 2, 0, 0, 0});
    const auto r = run_iteration(u0, family_schedule(spec));
    CHECK(r.report.eps == doctest::Approx(1e-10 * lp_norm(u0, 2.0)));
    RunOptions opt;
    opt.p = 3.0;
    opt.integrand = Integrand(WeightedPower{1.0, 2.0});
    const auto r3 = run_iteration(u0, family_schedule(spec), opt);
    CHECK(r3.report.p == 3.0);
    CHECK(r3.report.records[0].J == evaluate_functional(u0, Integrand(WeightedPower{1.0, 2.0})));
}

TEST_CASE("step invariant checker reports injected faults") {
    StepRecord a, b;
    a.n = 3;
    b.n = 4;
    a.lp_dist_ustar = 1.0;
    b.lp_dist_ustar = 0.9;
    a.grad_lp = b.grad_lp = 2.0;
    CHECK(verify_step_invariants(a, b, PolarizationMode::Exact).empty());

    auto permuted = b;
    permuted.multiset_ok = false;
    const auto v1 = verify_step_invariants(a, permuted, PolarizationMode::Exact);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("multiset") != std::string::npos);
    CHECK(verify_step_invariants(a, permuted, PolarizationMode::Interp).empty());

    auto farther = b;
    farther.lp_dist_ustar = 1.0 + 1e-9;
    CHECK(verify_step_invariants(a, farther, PolarizationMode::Exact).size() == 1);
    CHECK(verify_step_invariants(a, farther, PolarizationMode::Interp).empty());
    farther.lp_dist_ustar = 1.0 + 1e-5;
    CHECK(verify_step_invariants(a, farther, PolarizationMode::Interp).size() == 1);

    auto steep = b;
    steep.grad_lp = 3.5;
    CHECK(verify_step_invariants(a, steep, PolarizationMode::Exact).size() == 1);
}

TEST_CASE("report CSV layout") {
    const auto spec = line(7, 1.0);
    const auto r = run_iteration(GridFunction(spec, {0, 1, 3, 2, 0, 0, 0}), family_schedule(spec));
    std::ostringstream out;
    write_report_csv(out, r.report);
    std::istringstream in(out.str());
    std::string line_text;
    std::getline(in, line_text);
    CHECK(line_text == "n,lp_dist_ustar,J,grad_lp,sweep_change,multiset_ok");
    std::size_t rows = 0;
    while (std::getline(in, line_text)) {
        CHECK(std::count(line_text.begin(), line_text.end(), ',') == 5);
        CHECK(line_text.back() == '1');
        std::istringstream fields(line_text);
        std::string first;
        std::getline(fields, first, ',');
        CHECK(std::stoul(first) == rows);
        ++rows;
    }
    CHECK(rows == r.report.records.size());
    CHECK(to_string(RunStatus::FixedPoint) == "FIXED_POINT");
    CHECK(to_string(RunStatus::Converged) == "CONVERGED");
    CHECK(to_string(RunStatus::MaxSteps) == "MAX_STEPS");
}
