#include "polsym/reference.hpp"

#include <algorithm>
#include <cmath>

#include "polsym/reduce.hpp"

namespace polsym::reference {
namespace {

// Value at the cell nearest to a physical point; zero outside the box.
double nearest_value(const GridFunction& u, const Point& y) {
    const auto& spec = u.spec();
    CellCoord k{0, 0, 0};
    for (int a = 0; a < spec.dim(); ++a)
        k[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::llround(y[a] / spec.spacing()));
    const auto flat = spec.flat_of(k);
    return flat < 0 ? 0.0 : u[static_cast<std::size_t>(flat)];
}

template <typename Mirror>
GridFunction polarize_with(const GridFunction& u, const HalfSpace& hs, Mirror&& mirror) {
    const auto& spec = u.spec();
    std::vector<double> out(u.size());
    const double plane_tol = 1e-9 * spec.spacing();
    for (std::size_t c = 0; c < u.size(); ++c) {
        const Point x = spec.position(c);
        const double g = hs.signed_gap(x);
        if (std::abs(g) <= plane_tol) {
            out[c] = u[c];
            continue;
        }
        const double m = mirror(reflect(hs, x));
        out[c] = g < 0.0 ? std::max(u[c], m) : std::min(u[c], m);
    }
    return GridFunction(spec, std::move(out));
}

}  // namespace

GridFunction polarize_exact(const GridFunction& u, const HalfSpace& hs) {
    return polarize_with(u, hs, [&](const Point& y) { return nearest_value(u, y); });
}

GridFunction polarize_interp(const GridFunction& u, const HalfSpace& hs) {
    return polarize_with(u, hs, [&](const Point& y) { return interpolate(u, y); });
}

GradientField gradient(const GridFunction& u) {
    const auto& spec = u.spec();
    GradientField g;
    g.components.assign(static_cast<std::size_t>(spec.dim()), std::vector<double>(u.size(), 0.0));
    g.magnitude.assign(u.size(), 0.0);
    for (std::size_t c = 0; c < u.size(); ++c) {
        const CellCoord k = spec.cell_of(c);
        double m2 = 0.0;
        for (int a = 0; a < spec.dim(); ++a) {
            CellCoord next = k;
            ++next[static_cast<std::size_t>(a)];
            const auto f = spec.flat_of(next);
            const double d = f < 0 ? 0.0 : (u[static_cast<std::size_t>(f)] - u[c]) / spec.spacing();
            g.components[static_cast<std::size_t>(a)][c] = d;
            m2 += d * d;
        }
        g.magnitude[c] = std::sqrt(m2);
    }
    return g;
}

double evaluate_functional(const GridFunction& u, const Integrand& j) {
    const auto g = reference::gradient(u);
    NeumaierSum s;
    for (std::size_t c = 0; c < u.size(); ++c) s.add(j.evaluate(u[c], g.magnitude[c]));
    return u.spec().cell_volume() * s.value();
}

}  // namespace polsym::reference
