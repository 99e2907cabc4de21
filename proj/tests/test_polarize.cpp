#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "polsym/grid.hpp"
#include "polsym/polarize.hpp"
#include "polsym/rearrange.hpp"
#include "polsym/reference.hpp"
#include "polsym/schedule.hpp"
#include "support.hpp"

using namespace polsym;
using namespace testsupport;

namespace {

std::vector<double> vec(const GridFunction& u) { return {u.values().begin(), u.values().end()}; }

GridFunction polarize_auto(const GridFunction& u, const HalfSpace& hs) {
    return polarize(u, hs, is_grid_compatible(hs, u.spec()));
}

/// Random half-spaces whose reflections are grid bijections on a square grid.
std::vector<HalfSpace> exact_halfspaces(const GridSpec& spec, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> axis(0, spec.dim() - 1), sign(0, 1);
    std::uniform_int_distribution<long long> m(0, 2 * spec.half_cells(0));
    std::vector<HalfSpace> out;
    for (int i = 0; i < count; ++i) {
        if (spec.dim() >= 2 && i % 4 == 3) {
            out.push_back(HalfSpace::diagonal(spec.dim(), 0, 1, sign(rng) ? 1 : -1, sign(rng) ? 1 : -1));
        } else {
            out.push_back(HalfSpace::axis(spec.dim(), axis(rng), sign(rng) ? 1 : -1,
                                          0.5 * static_cast<double>(m(rng)) * spec.spacing()));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("half-space construction") {
    const HalfSpace hs(2, {3.0, 4.0, 0.0}, 1.0);
    CHECK(hs.normal()[0] == doctest::Approx(0.6));
    CHECK(hs.normal()[1] == doctest::Approx(0.8));
    CHECK(hs.contains({0.0, 0.0, 0.0}));
    CHECK(hs.signed_gap({0.6, 0.8, 0.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(HalfSpace(2, {0.0, 0.0, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HalfSpace(2, {1.0, 0.0, 0.0}, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(HalfSpace(4, {1.0, 0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("reflection") {
    const auto hs = HalfSpace::axis(2, 0, +1, 0.0);
    const auto r = reflect(hs, {1.0, 2.0, 0.0});
    CHECK(r[0] == -1.0);
    CHECK(r[1] == 2.0);

    const HalfSpace tilted(2, {1.0, 2.0, 0.0}, 0.7);
    const double t = 0.7 / std::sqrt(5.0);
    const Point on_plane{t * 1.0 - 2.0 * 0.3, t * 2.0 + 0.3, 0.0};
    const auto fixed = reflect(tilted, on_plane);
    CHECK(std::abs(fixed[0] - on_plane[0]) < 1e-15);
    CHECK(std::abs(fixed[1] - on_plane[1]) < 1e-15);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> off(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const HalfSpace h(3, {g(rng), g(rng), g(rng)}, off(rng));
        const Point x{g(rng), g(rng), g(rng)};
        const auto back = reflect(h, reflect(h, x));
        const double err = std::hypot(back[0] - x[0], back[1] - x[1], back[2] - x[2]);
        CHECK(err < 1e-14);
    }
}

TEST_CASE("grid compatibility certificates") {
    const auto spec = square(9, 0.25);
    CHECK(is_grid_compatible(HalfSpace::axis(2, 0, +1, 0.0), spec).mode == PolarizationMode::Exact);
    CHECK(is_grid_compatible(HalfSpace::axis(2, 1, -1, 0.125), spec).mode == PolarizationMode::Exact);
    CHECK(is_grid_compatible(HalfSpace::axis(2, 0, +1, 0.25 * 0.25), spec).mode == PolarizationMode::Interp);
    CHECK(is_grid_compatible(HalfSpace(2, {0.8, 0.6, 0.0}, 0.0), spec).mode == PolarizationMode::Interp);
    CHECK(is_grid_compatible(HalfSpace::diagonal(2, 0, 1, 1, 1, 0.1), spec).mode == PolarizationMode::Interp);
    CHECK(is_grid_compatible(HalfSpace::diagonal(2, 0, 1, 1, 1), GridSpec({9, 7}, 0.25)).mode ==
          PolarizationMode::Interp);

    // The diagonal through the origin induces the transpose.
    const auto cert = is_grid_compatible(HalfSpace::diagonal(2, 0, 1, 1, -1), spec);
    REQUIRE(cert.mode == PolarizationMode::Exact);
    const auto map = cert.index_map(spec);
    for (std::size_t c = 0; c < spec.size(); ++c) {
        const auto k = spec.cell_of(c);
        CHECK(map[c] == spec.flat_of({k[1], k[0], 0}));
    }
    CHECK_THROWS_AS(is_grid_compatible(HalfSpace(2, {0.8, 0.6, 0.0}, 0.0), spec).index_map(spec), std::logic_error);
}

TEST_CASE("index maps are involutions that agree with the geometric reflection") {
    const auto spec = GridSpec({7, 7, 7}, 0.5);
    for (const auto& hs : exact_halfspaces(spec, 5, 40)) {
        const auto cert = is_grid_compatible(hs, spec);
        REQUIRE(cert.mode == PolarizationMode::Exact);
        const auto map = cert.index_map(spec);
        for (std::size_t c = 0; c < spec.size(); ++c) {
            const auto x = reflect(hs, spec.position(c));
            bool inside = true;
            CellCoord k{0, 0, 0};
            for (int a = 0; a < 3; ++a) {
                k[static_cast<std::size_t>(a)] = std::llround(x[a] / spec.spacing());
                inside = inside && std::abs(k[static_cast<std::size_t>(a)]) <= 3;
            }
            CHECK(map[c] == (inside ? spec.flat_of(k) : -1));
            if (map[c] >= 0) CHECK(map[static_cast<std::size_t>(map[c])] == static_cast<std::int64_t>(c));
        }
    }
}

TEST_CASE("1D polarization examples") {
    const GridFunction u(line(5, 1.0), {0, 2, 0, 1, 0});
    CHECK(vec(polarize_auto(u, HalfSpace::axis(1, 0, +1, 0.0))) == std::vector<double>{0, 2, 0, 1, 0});
    CHECK(vec(polarize_auto(u, HalfSpace::axis(1, 0, -1, 0.0))) == std::vector<double>{0, 1, 0, 2, 0});
    // d = h/2: pairs (-1,2), (0,1); origin side keeps the max.
    CHECK(vec(polarize_auto(u, HalfSpace::axis(1, 0, +1, 0.5))) == std::vector<double>{0, 2, 1, 0, 0});
}

TEST_CASE("exact polarization permutes values and matches the serial reference") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto spec = seed % 3 == 0 ? line(41, 0.1) : seed % 3 == 1 ? square(33, 0.1) : GridSpec({11, 11, 11}, 0.2);
        const auto u = seed % 2 ? random_function(spec, seed) : random_smooth(spec, seed);
        for (const auto& hs : exact_halfspaces(spec, seed, 16)) {
            const auto cert = is_grid_compatible(hs, spec);
            REQUIRE(cert.mode == PolarizationMode::Exact);
            const auto v = polarize(u, hs, cert);
            CHECK(value_multiset(v) == value_multiset(u));
            CHECK(v == reference::polarize_exact(u, hs));
            CHECK(polarize(v, hs, cert) == v);
        }
    }
}

TEST_CASE("interpolated polarization matches the serial reference") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> off(0.0, 0.5);
    const auto spec = square(33, 1.0 / 16);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto u = random_smooth(spec, seed);
        const HalfSpace hs(2, {g(rng), g(rng), 0.0}, off(rng));
        const auto cert = is_grid_compatible(hs, spec);
        REQUIRE(cert.mode == PolarizationMode::Interp);
        CHECK(polarize(u, hs, cert) == reference::polarize_interp(u, hs));
    }
}

TEST_CASE("exact polarization is an Lp contraction and order preserving") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto spec = square(25, 0.1);
        const auto u = random_smooth(spec, seed);
        const auto w = random_smooth(spec, seed + 100);
        std::vector<double> hi(u.size());
        for (std::size_t c = 0; c < u.size(); ++c) hi[c] = u[c] + w[c];
        const GridFunction v(spec, hi);
        for (const auto& hs : exact_halfspaces(spec, seed, 12)) {
            const auto cert = is_grid_compatible(hs, spec);
            const auto uh = polarize(u, hs, cert), wh = polarize(w, hs, cert), vh = polarize(v, hs, cert);
            for (double p : {1.5, 2.0, 3.0}) CHECK(lp_distance(uh, wh, p) <= lp_distance(u, w, p) * (1 + 1e-14));
            for (std::size_t c = 0; c < u.size(); ++c) CHECK(uh[c] <= vh[c]);
        }
    }
}

TEST_CASE("symmetric decreasing functions are fixed by every family member") {
    for (const auto& spec : {line(21, 0.1), square(15, 0.1), GridSpec({9, 9, 9}, 0.25)}) {
        const auto s = schwarz_symmetrize(random_function(spec, 9));
        for (const auto& member : exact_family(spec)) CHECK(polarize(s, member.halfspace, member.certificate) == s);
    }
}

TEST_CASE("only the tie-compatible orientation through the origin preserves the radial order") {
    const auto spec = square(9, 1.0);
    CHECK(preserves_radial_order(is_grid_compatible(HalfSpace::axis(2, 0, +1, 0.0), spec), spec));
    CHECK_FALSE(preserves_radial_order(is_grid_compatible(HalfSpace::axis(2, 0, -1, 0.0), spec), spec));
    CHECK(preserves_radial_order(is_grid_compatible(HalfSpace::axis(2, 0, -1, 0.5), spec), spec));
    CHECK_FALSE(preserves_radial_order(is_grid_compatible(HalfSpace(2, {0.8, 0.6, 0.0}, 0.0), spec), spec));
}

TEST_CASE("exact family of a 5-cell line") {
    // Oracle: all axis half-spaces with d = m h / 2 inside the box, both
    // orientations, minus the orientation through the origin that would
    // reverse the tie-break of the radial order.
    const auto spec = line(5, 0.5);
    std::set<std::pair<int, long long>> want;
    for (int sign : {+1, -1})
        for (long long m = 0; m <= 4; ++m)
            if (!(m == 0 && sign < 0)) want.insert({sign, m});
    std::set<std::pair<int, long long>> got;
    for (const auto& member : exact_family(spec)) {
        const auto& hs = member.halfspace;
        CHECK(member.certificate.mode == PolarizationMode::Exact);
        got.insert({hs.normal()[0] > 0 ? +1 : -1, std::llround(2.0 * hs.offset() / spec.spacing())});
    }
    CHECK(got == want);
}

TEST_CASE("2D exact family contents") {
    const auto spec = square(65, 1.0 / 32);
    const auto family = exact_family(spec);
    // 2 axes x (2 x 64 offsets + 1 at the origin) + 2 diagonals.
    CHECK(family.size() == 2 * (2 * 64 + 1) + 2);
    for (const auto& member : family) CHECK(preserves_radial_order(member.certificate, spec));
}

TEST_CASE("schedules are deterministic and cover the family") {
    const auto spec = square(17, 0.125);
    const auto family = exact_family(spec);
    const auto a = generate_schedule(spec, 3 * family.size(), 42, ScheduleFamily::Exact);
    const auto b = generate_schedule(spec, 3 * family.size(), 42, ScheduleFamily::Exact);
    std::ostringstream sa, sb;
    write_schedule(sa, a);
    write_schedule(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(a.all_exact());

    auto key = [](const HalfSpace& hs) {
        return std::make_tuple(std::llround(hs.normal()[0] * 1e9), std::llround(hs.normal()[1] * 1e9),
                               std::llround(hs.offset() * 1e9));
    };
    std::set<std::tuple<long long, long long, long long>> first_round, family_keys;
    for (std::size_t i = 0; i < family.size(); ++i) first_round.insert(key(a.steps[i].halfspace));
    for (const auto& m : family) family_keys.insert(key(m.halfspace));
    CHECK(first_round == family_keys);

    const auto c = generate_schedule(spec, 3 * family.size(), 43, ScheduleFamily::Exact);
    std::ostringstream sc;
    write_schedule(sc, c);
    CHECK(sc.str() != sa.str());
    CHECK_THROWS_AS(generate_schedule(spec, 0, 1, ScheduleFamily::Exact), std::invalid_argument);
}

TEST_CASE("mixed schedules contain interpolated half-spaces through the origin side") {
    const auto spec = square(17, 0.125);
    const auto s = generate_schedule(spec, 200, 7, ScheduleFamily::Mixed);
    std::size_t interp = 0;
    for (const auto& step : s.steps) {
        interp += step.certificate.mode == PolarizationMode::Interp;
        CHECK(step.halfspace.contains({0.0, 0.0, 0.0}));
    }
    CHECK(interp > 0);
    CHECK_FALSE(s.all_exact());
}

TEST_CASE("schedule files round trip and reject mismatched modes") {
    const auto spec = square(17, 0.125);
    const auto s = generate_schedule(spec, 60, 5, ScheduleFamily::Mixed, Strategy::Triangular);
    std::stringstream ss;
    write_schedule(ss, s);
    const auto back = read_schedule(ss, spec);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back.steps[i].certificate.mode == s.steps[i].certificate.mode);
        CHECK(back.steps[i].halfspace.offset() == s.steps[i].halfspace.offset());
        for (int a = 0; a < 2; ++a) CHECK(back.steps[i].halfspace.normal()[a] == s.steps[i].halfspace.normal()[a]);
    }
    std::istringstream bad("1 0 0.0625 exact\n");  // d = h/2: fine
    CHECK_NOTHROW(read_schedule(bad, spec));
    std::istringstream wrong("1 0 0.03 exact\n");
    CHECK_THROWS_AS(read_schedule(wrong, spec), Error);
    CHECK(parse_strategy("triangular") == Strategy::Triangular);
    CHECK(parse_schedule_family("mixed") == ScheduleFamily::Mixed);
    CHECK_THROWS(parse_strategy("zigzag"));
}
