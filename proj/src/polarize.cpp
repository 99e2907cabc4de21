#include <algorithm>
#include <cmath>

#include "polsym/polarize.hpp"

namespace polsym {

double interpolate(const GridFunction& u, const Point& x) {
    const auto& spec = u.spec();
    const int dim = spec.dim();
    std::array<std::int64_t, kMaxDim> base{0, 0, 0};
    std::array<double, kMaxDim> frac{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
        const double xi = x[a] / spec.spacing() + static_cast<double>(spec.half_cells(a));
        if (!(xi > -1.0 && xi < static_cast<double>(spec.shape(a)))) return 0.0;
        const double f = std::floor(xi);
        base[a] = static_cast<std::int64_t>(f);
        frac[a] = xi - f;
    }
    double value = 0.0;
    for (int corner = 0; corner < (1 << dim); ++corner) {
        double weight = 1.0;
        std::int64_t flat = 0;
        bool inside = true;
        for (int a = 0; a < dim; ++a) {
            const int bit = (corner >> a) & 1;
            const std::int64_t idx = base[a] + bit;
            weight *= bit ? frac[a] : 1.0 - frac[a];
            if (idx < 0 || idx >= spec.shape(a)) {
                inside = false;
                break;
            }
            flat += idx * static_cast<std::int64_t>(spec.stride(a));
        }
        if (inside && weight != 0.0) value += weight * u[static_cast<std::size_t>(flat)];
    }
    return value;
}

namespace {

GridFunction polarize_exact(const GridFunction& u, const ExactReflection& refl) {
    const auto& spec = u.spec();
    const auto in = u.values();
    std::vector<double> out(in.size());
    const auto n = static_cast<long long>(in.size());
    // Each pair is owned by its H-side cell, so every entry is written once.
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(i);
        const CellCoord k = spec.cell_of(c);
        const std::int64_t s = refl.side(k);
        if (s == 0) {
            out[c] = in[c];
            continue;
        }
        const std::int64_t p = spec.flat_of(refl.partner(k));
        if (s < 0) {
            const double mine = in[c];
            const double theirs = p >= 0 ? in[static_cast<std::size_t>(p)] : 0.0;
            out[c] = std::max(mine, theirs);
            if (p >= 0) out[static_cast<std::size_t>(p)] = std::min(mine, theirs);
        } else if (p < 0) {
            out[c] = std::min(in[c], 0.0);
        }
    }
    return GridFunction(spec, std::move(out));
}

GridFunction polarize_interp(const GridFunction& u, const HalfSpace& hs) {
    const auto& spec = u.spec();
    const auto in = u.values();
    std::vector<double> out(in.size());
    const double plane_tol = 1e-12 * spec.spacing();
    const auto n = static_cast<long long>(in.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(i);
        const Point x = spec.position(c);
        const double g = hs.signed_gap(x);
        if (std::abs(g) <= plane_tol) {
            out[c] = in[c];
            continue;
        }
        const double mirrored = interpolate(u, reflect(hs, x));
        out[c] = g < 0.0 ? std::max(in[c], mirrored) : std::min(in[c], mirrored);
    }
    // Interpolation can spread support by up to one cell per application;
    // the boundary layer is held at zero to keep compact support.
    for (std::size_t c = 0; c < out.size(); ++c)
        if (spec.on_boundary(c)) out[c] = 0.0;
    return GridFunction(spec, std::move(out));
}

}  // namespace

GridFunction polarize(const GridFunction& u, const HalfSpace& hs, const CompatibilityCertificate& cert) {
    if (hs.dim() != u.spec().dim()) throw std::invalid_argument("polarize: dimension mismatch");
    if (cert.mode == PolarizationMode::Exact) {
        if (!cert.reflection) throw std::invalid_argument("polarize: Exact certificate without reflection");
        return polarize_exact(u, *cert.reflection);
    }
    return polarize_interp(u, hs);
}

}  // namespace polsym
