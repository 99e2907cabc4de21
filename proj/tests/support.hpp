#pragma once

// Shared fixtures for the unit and property tests: seeded generators of
// admissible grid functions and brute-force oracles written directly from
// the definitions, without going through the library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "polsym/grid.hpp"

namespace testsupport {

using polsym::CellCoord;
using polsym::GridFunction;
using polsym::GridSpec;

inline GridSpec square(int n, double h) { return GridSpec({n, n}, h); }
inline GridSpec line(int n, double h) { return GridSpec({n}, h); }

/// Unit box: extent 1 along every axis.
inline GridSpec unit_grid(int dim, int n) {
    return GridSpec(std::vector<int>(static_cast<std::size_t>(dim), n), 1.0 / ((n - 1) / 2));
}

/// Cell coordinates of a flat index, decoded independently of GridSpec.
inline std::vector<long long> coords(const GridSpec& spec, std::size_t flat) {
    std::vector<long long> k(static_cast<std::size_t>(spec.dim()));
    for (int a = spec.dim() - 1; a >= 0; --a) {
        const auto n = static_cast<std::size_t>(spec.shape(a));
        k[static_cast<std::size_t>(a)] = static_cast<long long>(flat % n) - (spec.shape(a) - 1) / 2;
        flat /= n;
    }
    return k;
}

inline long long r2(const std::vector<long long>& k) {
    long long s = 0;
    for (auto x : k) s += x * x;
    return s;
}

/// Random admissible function: values drawn from a small alphabet (so ties
/// are common) on cells inside a random disc well within the box, zero
/// elsewhere. Small enough that u* always fits inside the interior.
inline GridFunction random_function(const GridSpec& spec, std::uint64_t seed, int levels = 8) {
    std::mt19937_64 rng(seed);
    long long half = std::numeric_limits<long long>::max();
    for (int a = 0; a < spec.dim(); ++a) half = std::min<long long>(half, (spec.shape(a) - 1) / 2);
    std::uniform_real_distribution<double> frac(0.3, 0.7);
    const double rad = frac(rng) * static_cast<double>(half - 1);
    std::uniform_int_distribution<int> level(0, levels);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    const double s = scale(rng);
    std::vector<double> v(spec.size(), 0.0);
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (static_cast<double>(r2(coords(spec, c))) <= rad * rad) v[c] = s * level(rng);
    }
    return GridFunction(spec, std::move(v));
}

/// Smooth random function: sum of (1 - q)^2 bumps at random interior
/// centers (not lattice aligned), so ties are rare.
inline GridFunction random_smooth(const GridSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double ext = spec.extent(0);
    for (int a = 1; a < spec.dim(); ++a) ext = std::min(ext, spec.extent(a));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int count = 1 + static_cast<int>(u01(rng) * 3);
    struct Bump { double c[3]; double r, a; };
    std::vector<Bump> bumps;
    for (int i = 0; i < count; ++i) {
        Bump b{};
        b.r = (0.15 + 0.15 * u01(rng)) * ext;
        for (int a = 0; a < spec.dim(); ++a) b.c[a] = (u01(rng) * 2.0 - 1.0) * (0.8 * ext - b.r);
        b.a = 0.5 + u01(rng);
        bumps.push_back(b);
    }
    std::vector<double> v(spec.size(), 0.0);
    for (std::size_t c = 0; c < v.size(); ++c) {
        const auto x = spec.position(c);
        for (const auto& b : bumps) {
            double d2 = 0.0;
            for (int a = 0; a < spec.dim(); ++a) d2 += (x[a] - b.c[a]) * (x[a] - b.c[a]);
            const double q = d2 / (b.r * b.r);
            if (q < 1.0) v[c] += b.a * (1.0 - q) * (1.0 - q);
        }
    }
    return GridFunction(spec, std::move(v));
}

/// u* by brute force: stable sort of cells by integer squared radius, ties
/// by flat index, then the descending values placed along that list.
inline std::vector<double> brute_symmetrize(const GridFunction& u) {
    const auto& spec = u.spec();
    std::vector<std::size_t> cells(u.size());
    std::iota(cells.begin(), cells.end(), std::size_t{0});
    std::stable_sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) {
        return r2(coords(spec, a)) < r2(coords(spec, b));
    });
    std::vector<double> vals(u.values().begin(), u.values().end());
    std::sort(vals.begin(), vals.end(), std::greater<>());
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t i = 0; i < cells.size(); ++i) out[cells[i]] = vals[i];
    return out;
}

/// (h^N sum |v|^p)^(1/p) in long double.
inline double brute_lp(const std::vector<double>& v, double vol, double p) {
    long double s = 0.0L;
    for (double x : v) s += std::pow(static_cast<long double>(std::abs(x)), static_cast<long double>(p));
    return static_cast<double>(std::pow(s * vol, 1.0L / p));
}

/// Forward difference along `axis`, zero on the last layer, from coordinates.
inline std::vector<double> brute_forward_diff(const GridFunction& u, int axis) {
    const auto& spec = u.spec();
    std::vector<double> d(u.size(), 0.0);
    for (std::size_t c = 0; c < u.size(); ++c) {
        auto k = coords(spec, c);
        if (k[static_cast<std::size_t>(axis)] == (spec.shape(axis) - 1) / 2) continue;
        std::size_t step = 1;
        for (int a = spec.dim() - 1; a > axis; --a) step *= static_cast<std::size_t>(spec.shape(a));
        d[c] = (u[c + step] - u[c]) / spec.spacing();
    }
    return d;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testsupport
