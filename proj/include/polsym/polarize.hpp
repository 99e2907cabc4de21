#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "polsym/grid.hpp"

namespace polsym {

using Point = std::array<double, kMaxDim>;

/// Closed half-space H = {x : a.x <= d} with |a| = 1 and d >= 0, so the
/// origin always lies in H. The reflection across its boundary is
/// sigma(x) = x - 2 (a.x - d) a.
class HalfSpace {
public:
    HalfSpace() = default;
    /// Normalizes `normal`; throws std::invalid_argument for a zero normal,
    /// d < 0, or a dimension outside {1,2,3}.
    HalfSpace(int dim, Point normal, double offset);

    /// a = sign * e_axis, d = offset.
    static HalfSpace axis(int dim, int axis, int sign, double offset);
    /// a = (sign_i e_i + sign_j e_j) / sqrt(2), d = offset.
    static HalfSpace diagonal(int dim, int i, int j, int sign_i, int sign_j, double offset = 0.0);

    int dim() const { return dim_; }
    const Point& normal() const { return normal_; }
    double offset() const { return offset_; }

    /// a.x - d; negative strictly inside H, zero on the boundary.
    double signed_gap(const Point& x) const;
    bool contains(const Point& x) const { return signed_gap(x) <= 0.0; }

private:
    int dim_ = 1;
    Point normal_{1.0, 0.0, 0.0};
    double offset_ = 0.0;
};

/// sigma_H(x).
Point reflect(const HalfSpace& hs, const Point& x);

/// A reflection that maps cell centers to cell centers, written in integer
/// cell coordinates k: side(k) = w.k - r (negative inside H) and
/// partner(k) = k - 2 side(k) w / |w|^2.
struct ExactReflection {
    CellCoord w{0, 0, 0};
    std::int64_t r = 0;

    std::int64_t side(const CellCoord& k) const;
    CellCoord partner(const CellCoord& k) const;
    friend bool operator==(const ExactReflection&, const ExactReflection&) = default;
};

enum class PolarizationMode { Exact, Interp };

struct CompatibilityCertificate {
    PolarizationMode mode = PolarizationMode::Interp;
    /// Present iff mode == Exact.
    std::optional<ExactReflection> reflection;

    /// Induced index map: partner flat index for every cell, -1 when the
    /// reflected center leaves the box (paired with a virtual zero).
    /// Throws std::logic_error in Interp mode.
    std::vector<std::int64_t> index_map(const GridSpec& spec) const;
};

/// Recognizes axis-aligned half-spaces with d a multiple of h/2 and
/// diagonal ones through the origin (equal shape on both axes) as Exact.
CompatibilityCertificate is_grid_compatible(const HalfSpace& hs, const GridSpec& spec);

/// True when every cell strictly inside H precedes its in-box partner in
/// RadialOrder, i.e. Schwarz-symmetric functions are fixed by this
/// polarization. Always false for Interp certificates.
bool preserves_radial_order(const CompatibilityCertificate& cert, const GridSpec& spec);

/// Two-point rearrangement: max{u(x), u(sigma x)} on H, min elsewhere.
/// Exact mode is a pure permutation of values, processed pair by pair in
/// parallel. Interp mode evaluates u(sigma x) by multilinear
/// interpolation (zero outside the box); its output is zeroed on the
/// boundary layer, so equimeasurability holds only approximately.
GridFunction polarize(const GridFunction& u, const HalfSpace& hs,
                      const CompatibilityCertificate& cert);

/// Multilinear interpolation of u at a physical point; zero outside the box.
double interpolate(const GridFunction& u, const Point& x);

}  // namespace polsym
