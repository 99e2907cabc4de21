#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polsym/polarize.hpp"

namespace polsym {

enum class Strategy {
    /// Sweep n applies the whole list H_1..H_K.
    Cyclic,
    /// Step n applies H_1..H_{n+1} (capped at K) to the previous iterate.
    Triangular,
};

enum class ScheduleFamily { Exact, Mixed };

struct ScheduledHalfSpace {
    HalfSpace halfspace;
    CompatibilityCertificate certificate;
};

struct PolarizationSchedule {
    std::vector<ScheduledHalfSpace> steps;
    Strategy strategy = Strategy::Cyclic;

    std::size_t size() const { return steps.size(); }
    bool all_exact() const;
};

/// Every Exact half-space of the grid that leaves RadialOrder-symmetric
/// functions fixed: axis-aligned at all offsets d = m h / 2 in [0, extent]
/// with both orientations (only the tie-compatible orientation at d = 0),
/// plus tie-compatible diagonals through the origin.
std::vector<ScheduledHalfSpace> exact_family(const GridSpec& spec);

/// Seeded schedule of `count` half-spaces. Exact draws walk through
/// shuffled copies of exact_family(spec), so every member is hit once per
/// round; Mixed interleaves random Interp half-spaces (uniform unit normal,
/// offset uniform in [0, extent]) with probability 1/2.
/// Throws std::invalid_argument for count == 0.
PolarizationSchedule generate_schedule(const GridSpec& spec, std::size_t count, std::uint64_t seed,
                                       ScheduleFamily family, Strategy strategy = Strategy::Cyclic);

/// One half-space per line: "a1 ... ad d mode" with mode exact|interp.
void write_schedule(std::ostream& out, const PolarizationSchedule& schedule);
/// Recomputes every certificate and rejects lines whose recorded mode
/// disagrees with the grid.
PolarizationSchedule read_schedule(std::istream& in, const GridSpec& spec);

ScheduleFamily parse_schedule_family(const std::string& name);
Strategy parse_strategy(const std::string& name);

}  // namespace polsym
