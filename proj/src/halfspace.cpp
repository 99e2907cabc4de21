#include <cmath>
#include <limits>
#include <stdexcept>

#include "polsym/polarize.hpp"
#include "polsym/rearrange.hpp"

namespace polsym {
namespace {

constexpr double kDirectionTol = 1e-12;
constexpr double kOffsetTol = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kDirectionTol; }

}  // namespace

HalfSpace::HalfSpace(int dim, Point normal, double offset) : dim_(dim), offset_(offset) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("half-space dimension must be 1, 2 or 3");
    if (!(offset >= 0.0) || !std::isfinite(offset))
        throw std::invalid_argument("half-space offset must be finite and >= 0 (origin inside H)");
    double n2 = 0.0;
    for (int k = 0; k < dim; ++k) n2 += normal[k] * normal[k];
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw std::invalid_argument("half-space normal must be nonzero");
    // A normal that is already unit up to rounding is kept as given, so a
    // written and re-read half-space is bit-identical to the original.
    const double n = std::abs(n2 - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon() ? 1.0 : std::sqrt(n2);
    normal_ = {0.0, 0.0, 0.0};
    for (int k = 0; k < dim; ++k) normal_[k] = normal[k] / n;
}

HalfSpace HalfSpace::axis(int dim, int axis, int sign, double offset) {
    Point a{0.0, 0.0, 0.0};
    a.at(static_cast<std::size_t>(axis)) = sign < 0 ? -1.0 : 1.0;
    return HalfSpace(dim, a, offset);
}

HalfSpace HalfSpace::diagonal(int dim, int i, int j, int sign_i, int sign_j, double offset) {
    if (i == j) throw std::invalid_argument("diagonal half-space needs two distinct axes");
    const double c = std::sqrt(0.5);
    Point a{0.0, 0.0, 0.0};
    a.at(static_cast<std::size_t>(i)) = sign_i < 0 ? -c : c;
    a.at(static_cast<std::size_t>(j)) = sign_j < 0 ? -c : c;
    return HalfSpace(dim, a, offset);
}

double HalfSpace::signed_gap(const Point& x) const {
    double s = -offset_;
    for (int k = 0; k < dim_; ++k) s += normal_[k] * x[k];
    return s;
}

Point reflect(const HalfSpace& hs, const Point& x) {
    const double g = hs.signed_gap(x);
    Point y = x;
    for (int k = 0; k < hs.dim(); ++k) y[k] = x[k] - 2.0 * g * hs.normal()[k];
    return y;
}

std::int64_t ExactReflection::side(const CellCoord& k) const {
    return w[0] * k[0] + w[1] * k[1] + w[2] * k[2] - r;
}

CellCoord ExactReflection::partner(const CellCoord& k) const {
    const std::int64_t n2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    const std::int64_t s = side(k);
    CellCoord p = k;
    for (std::size_t a = 0; a < p.size(); ++a) p[a] -= 2 * s * w[a] / n2;
    return p;
}

std::vector<std::int64_t> CompatibilityCertificate::index_map(const GridSpec& spec) const {
    if (mode != PolarizationMode::Exact || !reflection)
        throw std::logic_error("index_map needs an Exact certificate");
    std::vector<std::int64_t> map(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) map[i] = spec.flat_of(reflection->partner(spec.cell_of(i)));
    return map;
}

CompatibilityCertificate is_grid_compatible(const HalfSpace& hs, const GridSpec& spec) {
    CompatibilityCertificate interp;
    if (hs.dim() != spec.dim()) return interp;
    const auto& a = hs.normal();
    const double h = spec.spacing();

    std::vector<int> unit, diag;
    for (int k = 0; k < hs.dim(); ++k) {
        const double c = std::abs(a[k]);
        if (near(c, 1.0))
            unit.push_back(k);
        else if (near(c, std::sqrt(0.5)))
            diag.push_back(k);
        else if (!near(c, 0.0))
            return interp;
    }

    if (unit.size() == 1 && diag.empty()) {
        const double m = 2.0 * hs.offset() / h;
        const double mr = std::round(m);
        if (std::abs(m - mr) > kOffsetTol) return interp;
        ExactReflection refl;
        const auto i = static_cast<std::size_t>(unit[0]);
        refl.w[i] = a[i] > 0 ? 2 : -2;
        refl.r = static_cast<std::int64_t>(mr);
        return {PolarizationMode::Exact, refl};
    }
    if (unit.empty() && diag.size() == 2) {
        if (std::abs(hs.offset()) > kOffsetTol * h) return interp;
        if (spec.shape(diag[0]) != spec.shape(diag[1])) return interp;
        ExactReflection refl;
        for (int k : diag) refl.w[static_cast<std::size_t>(k)] = a[k] > 0 ? 1 : -1;
        return {PolarizationMode::Exact, refl};
    }
    return interp;
}

bool preserves_radial_order(const CompatibilityCertificate& cert, const GridSpec& spec) {
    if (cert.mode != PolarizationMode::Exact || !cert.reflection) return false;
    const auto order = RadialOrder::for_grid(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const CellCoord k = spec.cell_of(i);
        if (cert.reflection->side(k) >= 0) continue;
        const auto p = spec.flat_of(cert.reflection->partner(k));
        if (p >= 0 && order->rank(i) > order->rank(static_cast<std::size_t>(p))) return false;
    }
    return true;
}

}  // namespace polsym
