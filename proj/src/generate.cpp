#include <algorithm>
#include <cmath>
#include <random>

#include "polsym/grid.hpp"

namespace polsym {
namespace {

double param(const GeneratorParams& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

// Smallest box half-width; lengths in the generator parameters are
// fractions of it so that refining the grid samples the same function.
double half_width(const GridSpec& spec) {
    double e = spec.extent(0);
    for (int a = 1; a < spec.dim(); ++a) e = std::min(e, spec.extent(a));
    return e;
}

CellCoord shift_param(const GeneratorParams& params) {
    CellCoord s{0, 0, 0};
    for (std::size_t a = 0; a < s.size(); ++a)
        s[a] = static_cast<std::int64_t>(std::llround(param(params, "shift" + std::to_string(a), 0.0)));
    return s;
}

// Squared distance (in h^2 units) between a cell and an integer center;
// exact, so equal radii give bit-identical profile values.
std::int64_t radius2_from(const GridSpec& spec, std::size_t flat, const CellCoord& center) {
    const CellCoord c = spec.cell_of(flat);
    std::int64_t r2 = 0;
    for (int a = 0; a < spec.dim(); ++a) {
        const auto d = c[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
        r2 += d * d;
    }
    return r2;
}

template <typename Profile>
GridFunction radial(const GridSpec& spec, const CellCoord& center, Profile&& profile) {
    std::vector<double> v(spec.size());
    const double h2 = spec.spacing() * spec.spacing();
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = profile(static_cast<double>(radius2_from(spec, i, center)) * h2);
    return GridFunction(spec, std::move(v));
}

using Point = std::array<double, kMaxDim>;

double dist2(const Point& a, const Point& b, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
}

Point random_in_ball(std::mt19937_64& rng, int dim, double radius) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (;;) {
        Point p{0.0, 0.0, 0.0};
        double n2 = 0.0;
        for (int k = 0; k < dim; ++k) {
            p[k] = unit(rng);
            n2 += p[k] * p[k];
        }
        if (n2 <= 1.0) {
            for (int k = 0; k < dim; ++k) p[k] *= radius;
            return p;
        }
    }
}

struct Disc {
    Point center;
    double radius;
    double amplitude;
};

// Places `count` discs inside the ball of radius `room`, pairwise separated
// by at least `gap` (negative gap allows overlap).
std::vector<Disc> place_discs(std::mt19937_64& rng, int dim, int count, double room, double rmin,
                              double rmax, double gap, bool random_amplitude) {
    std::uniform_real_distribution<double> rad(rmin, rmax);
    std::uniform_real_distribution<double> amp(0.5, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Disc> discs;
        int tries = 0;
        while (static_cast<int>(discs.size()) < count && tries < 10000) {
            ++tries;
            const double r = rad(rng);
            if (r >= room) continue;
            const Point c = random_in_ball(rng, dim, room - r);
            const bool clear = std::all_of(discs.begin(), discs.end(), [&](const Disc& d) {
                const double need = r + d.radius + gap;
                return need <= 0.0 || dist2(c, d.center, dim) >= need * need;
            });
            if (clear) discs.push_back({c, r, random_amplitude ? amp(rng) : 1.0});
        }
        if (static_cast<int>(discs.size()) == count) return discs;
    }
    throw Error("generator: cannot place the requested discs inside the box");
}

}  // namespace

FunctionKind parse_function_kind(const std::string& name) {
    if (name == "gaussian-bump") return FunctionKind::GaussianBump;
    if (name == "multi-bump") return FunctionKind::MultiBump;
    if (name == "plateau") return FunctionKind::Plateau;
    if (name == "radial-translate") return FunctionKind::RadialTranslate;
    if (name == "indicator-union") return FunctionKind::IndicatorUnion;
    throw Error("unknown function kind '" + name + "'");
}

std::string to_string(FunctionKind kind) {
    switch (kind) {
        case FunctionKind::GaussianBump: return "gaussian-bump";
        case FunctionKind::MultiBump: return "multi-bump";
        case FunctionKind::Plateau: return "plateau";
        case FunctionKind::RadialTranslate: return "radial-translate";
        case FunctionKind::IndicatorUnion: return "indicator-union";
    }
    return "unknown";
}

GridFunction generate_test_function(FunctionKind kind, const GeneratorParams& params,
                                    const GridSpec& spec, std::uint64_t seed) {
    const double width = half_width(spec);
    const int dim = spec.dim();

    switch (kind) {
        case FunctionKind::GaussianBump: {
            const double amplitude = param(params, "amplitude", 1.0);
            const double sigma = param(params, "sigma", 0.25) * width;
            const double radius = param(params, "radius", 0.8) * width;
            const double floor = std::exp(-radius * radius / (2.0 * sigma * sigma));
            return radial(spec, CellCoord{0, 0, 0}, [=](double r2) {
                if (r2 >= radius * radius) return 0.0;
                return amplitude * (std::exp(-r2 / (2.0 * sigma * sigma)) - floor) / (1.0 - floor);
            });
        }
        case FunctionKind::RadialTranslate: {
            const double amplitude = param(params, "amplitude", 1.0);
            const double radius = param(params, "radius", 0.5) * width;
            const double power = param(params, "power", 2.0);
            return radial(spec, shift_param(params), [=](double r2) {
                const double q = 1.0 - r2 / (radius * radius);
                return q > 0.0 ? amplitude * std::pow(q, power) : 0.0;
            });
        }
        case FunctionKind::Plateau: {
            const double amplitude = param(params, "amplitude", 1.0);
            const double level = param(params, "level", 0.5) * amplitude;
            const double radius = param(params, "radius", 0.6) * width;
            const double inner = param(params, "inner", 0.3);
            const double outer = param(params, "outer", 0.6);
            if (!(0.0 < inner && inner < outer && outer < 1.0) || !(0.0 < level && level < amplitude))
                throw Error("plateau: need 0 < inner < outer < 1 and 0 < level < amplitude");
            const double in2 = inner * inner;
            const double out2 = outer * outer;
            return radial(spec, shift_param(params), [=](double r2) {
                const double q = r2 / (radius * radius);
                if (q < in2) return level + (amplitude - level) * (1.0 - q / in2);
                if (q <= out2) return level;
                if (q < 1.0) return level * (1.0 - (q - out2) / (1.0 - out2));
                return 0.0;
            });
        }
        case FunctionKind::MultiBump:
        case FunctionKind::IndicatorUnion: {
            const bool bumps = kind == FunctionKind::MultiBump;
            std::mt19937_64 rng(seed);
            const int count = static_cast<int>(param(params, "count", 3.0));
            if (count < 1) throw Error("generator: count must be >= 1");
            const double rmin = param(params, "radius_min", bumps ? 0.2 : 0.15) * width;
            const double rmax = param(params, "radius_max", bumps ? 0.35 : 0.25) * width;
            const double amplitude = param(params, "amplitude", 1.0);
            // Supports stay inside 0.9 of the half-width, independent of h,
            // so one seed describes the same function at every resolution.
            const double room = 0.9 * width;
            const double gap = bumps ? -0.5 * rmin : 0.1 * width;
            const auto discs = place_discs(rng, dim, count, room, rmin, rmax, gap, bumps);
            std::vector<double> v(spec.size(), 0.0);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const auto x = spec.position(i);
                double s = 0.0;
                for (const auto& d : discs) {
                    const double q = dist2(x, d.center, dim) / (d.radius * d.radius);
                    if (q >= 1.0) continue;
                    if (bumps)
                        s += amplitude * d.amplitude * (1.0 - q) * (1.0 - q);
                    else
                        s = amplitude;
                }
                v[i] = s;
            }
            return GridFunction(spec, std::move(v));
        }
    }
    throw Error("unhandled function kind");
}

}  // namespace polsym
