#include "polsym/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace polsym {

bool PolarizationSchedule::all_exact() const {
    return std::all_of(steps.begin(), steps.end(), [](const ScheduledHalfSpace& s) {
        return s.certificate.mode == PolarizationMode::Exact;
    });
}

std::vector<ScheduledHalfSpace> exact_family(const GridSpec& spec) {
    std::vector<ScheduledHalfSpace> family;
    auto add = [&](const HalfSpace& hs) {
        auto cert = is_grid_compatible(hs, spec);
        if (preserves_radial_order(cert, spec)) family.push_back({hs, std::move(cert)});
    };
    const double h = spec.spacing();
    for (int axis = 0; axis < spec.dim(); ++axis) {
        for (std::int64_t m = 0; m <= 2 * spec.half_cells(axis); ++m) {
            add(HalfSpace::axis(spec.dim(), axis, +1, 0.5 * static_cast<double>(m) * h));
            add(HalfSpace::axis(spec.dim(), axis, -1, 0.5 * static_cast<double>(m) * h));
        }
    }
    for (int i = 0; i < spec.dim(); ++i)
        for (int j = i + 1; j < spec.dim(); ++j)
            for (int si : {+1, -1})
                for (int sj : {+1, -1}) add(HalfSpace::diagonal(spec.dim(), i, j, si, sj));
    return family;
}

PolarizationSchedule generate_schedule(const GridSpec& spec, std::size_t count, std::uint64_t seed,
                                       ScheduleFamily family, Strategy strategy) {
    if (count == 0) throw std::invalid_argument("generate_schedule: count must be >= 1");
    const auto exact = exact_family(spec);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double extent = 0.0;
    for (int a = 0; a < spec.dim(); ++a) extent = std::max(extent, spec.extent(a));
    std::uniform_real_distribution<double> offset(0.0, extent);

    std::vector<std::size_t> round(exact.size());
    std::size_t cursor = round.size();

    PolarizationSchedule schedule;
    schedule.strategy = strategy;
    schedule.steps.reserve(count);
    while (schedule.steps.size() < count) {
        if (family == ScheduleFamily::Mixed && coin(rng) < 0.5) {
            Point a{0.0, 0.0, 0.0};
            double n2 = 0.0;
            while (n2 < 1e-12) {
                n2 = 0.0;
                for (int k = 0; k < spec.dim(); ++k) {
                    a[k] = gauss(rng);
                    n2 += a[k] * a[k];
                }
            }
            HalfSpace hs(spec.dim(), a, offset(rng));
            schedule.steps.push_back({hs, is_grid_compatible(hs, spec)});
            continue;
        }
        if (cursor == round.size()) {
            for (std::size_t i = 0; i < round.size(); ++i) round[i] = i;
            std::shuffle(round.begin(), round.end(), rng);
            cursor = 0;
        }
        schedule.steps.push_back(exact[round[cursor++]]);
    }
    return schedule;
}

void write_schedule(std::ostream& out, const PolarizationSchedule& schedule) {
    for (const auto& step : schedule.steps) {
        const auto& hs = step.halfspace;
        out << std::setprecision(17);
        for (int k = 0; k < hs.dim(); ++k) out << hs.normal()[k] << ' ';
        out << hs.offset() << ' '
            << (step.certificate.mode == PolarizationMode::Exact ? "exact" : "interp") << '\n';
    }
}

PolarizationSchedule read_schedule(std::istream& in, const GridSpec& spec) {
    PolarizationSchedule schedule;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        std::istringstream ls(line);
        Point a{0.0, 0.0, 0.0};
        double d = 0.0;
        std::string mode;
        for (int k = 0; k < spec.dim(); ++k) ls >> a[k];
        ls >> d >> mode;
        if (!ls || (mode != "exact" && mode != "interp"))
            throw Error("schedule line " + std::to_string(lineno) + ": expected 'a1 .. ad d exact|interp'");
        HalfSpace hs;
        try {
            hs = HalfSpace(spec.dim(), a, d);
        } catch (const std::invalid_argument& e) {
            throw Error("schedule line " + std::to_string(lineno) + ": " + e.what());
        }
        auto cert = is_grid_compatible(hs, spec);
        const bool exact = cert.mode == PolarizationMode::Exact;
        if (exact != (mode == "exact"))
            throw Error("schedule line " + std::to_string(lineno) + ": recorded mode '" + mode +
                        "' does not match the grid");
        schedule.steps.push_back({hs, std::move(cert)});
    }
    if (schedule.steps.empty()) throw Error("schedule file has no half-spaces");
    return schedule;
}

ScheduleFamily parse_schedule_family(const std::string& name) {
    if (name == "exact") return ScheduleFamily::Exact;
    if (name == "mixed") return ScheduleFamily::Mixed;
    throw Error("unknown schedule family '" + name + "'");
}

Strategy parse_strategy(const std::string& name) {
    if (name == "cyclic") return Strategy::Cyclic;
    if (name == "triangular") return Strategy::Triangular;
    throw Error("unknown strategy '" + name + "'");
}

}  // namespace polsym
