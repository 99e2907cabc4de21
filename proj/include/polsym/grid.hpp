#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polsym {

/// Raised when data violates a documented invariant (bad grid file, support
/// touching the boundary layer, non-finite integrand values, ...).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr int kMaxDim = 3;

/// Integer cell coordinates relative to the origin cell. Unused trailing
/// entries are zero.
using CellCoord = std::array<std::int64_t, kMaxDim>;

/// Uniform, origin-centered grid with odd cell counts on every axis.
///
/// Cell i on an axis with n cells sits at (i - (n-1)/2) * h, so the origin
/// is a cell center and x -> -x permutes the cells.
class GridSpec {
public:
    GridSpec() = default;
    /// Throws std::invalid_argument on dim outside {1,2,3}, even or
    /// non-positive shapes, or a non-positive spacing.
    GridSpec(std::vector<int> shape, double spacing);

    int dim() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    int shape(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return size_; }

    /// Half-width of the box along an axis: (n-1)/2 * h.
    double extent(int axis) const;
    /// Largest per-axis half-width, counted in cells.
    std::int64_t half_cells(int axis) const { return (shape(axis) - 1) / 2; }
    /// h^N.
    double cell_volume() const { return cell_volume_; }

    std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

    CellCoord cell_of(std::size_t flat) const;
    /// Flat index of a cell, or -1 when the cell lies outside the box.
    std::int64_t flat_of(const CellCoord& cell) const;
    std::array<double, kMaxDim> position(std::size_t flat) const;

    /// Squared distance from the origin in units of h^2 (exact integer).
    std::int64_t radius2_cells(std::size_t flat) const;
    /// True when the cell sits on the outermost layer of some axis.
    bool on_boundary(std::size_t flat) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    std::vector<int> shape_;
    double spacing_ = 1.0;
    std::size_t size_ = 0;
    double cell_volume_ = 1.0;
    std::vector<std::size_t> strides_;
};

/// Nonnegative grid samples vanishing on the boundary layer.
class GridFunction {
public:
    GridFunction() = default;
    /// Validates the cone and support invariants; throws polsym::Error.
    GridFunction(GridSpec spec, std::vector<double> values);

    static GridFunction zeros(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t flat) const { return values_[flat]; }
    std::size_t size() const { return values_.size(); }

    /// Hands the storage back for building a new function from it.
    std::vector<double> release() && { return std::move(values_); }

    friend bool operator==(const GridFunction& a, const GridFunction& b) {
        return a.spec_ == b.spec_ && a.values_ == b.values_;
    }

private:
    GridSpec spec_;
    std::vector<double> values_;
};

/// Throws polsym::Error when `values` breaks the GridFunction invariants.
void validate_grid_values(const GridSpec& spec, std::span<const double> values);

/// Descending (value, count) list; the discrete distribution fingerprint.
struct ValueMultiset {
    std::vector<std::pair<double, std::size_t>> entries;

    std::size_t total_count() const;
    friend bool operator==(const ValueMultiset&, const ValueMultiset&) = default;
};

/// h^N * #{c : u[c] > t}. Throws std::invalid_argument for t < 0.
double distribution_function(const GridFunction& u, double t);

ValueMultiset value_multiset(const GridFunction& u);
ValueMultiset value_multiset(std::span<const double> values);

/// (h^N * sum |u|^p)^(1/p), p > 1.
double lp_norm(const GridFunction& u, double p);
/// Same norm over raw samples that may be signed.
double lp_norm(std::span<const double> values, double cell_volume, double p);
/// ||u - v||_p for functions on the same grid.
double lp_distance(const GridFunction& u, const GridFunction& v, double p);

/// Named numeric parameters for the test-function generators.
using GeneratorParams = std::map<std::string, double>;

enum class FunctionKind { GaussianBump, MultiBump, Plateau, RadialTranslate, IndicatorUnion };

FunctionKind parse_function_kind(const std::string& name);
std::string to_string(FunctionKind kind);

/// Deterministic test corpus. Throws polsym::Error when the requested
/// support reaches the boundary layer.
///
/// Parameters (all optional). Lengths are fractions of the smallest
/// half-width, so a seed describes the same function at every spacing;
/// shift0..shift2 are whole cells:
///   gaussian-bump:    amplitude, sigma, radius
///   multi-bump:       count, radius_min, radius_max
///   plateau:          amplitude, level (fraction of amplitude), radius,
///                     inner, outer (fractions of radius), shift0..shift2
///   radial-translate: amplitude, radius, power, shift0..shift2
///   indicator-union:  count, amplitude, radius_min, radius_max
GridFunction generate_test_function(FunctionKind kind, const GeneratorParams& params,
                                    const GridSpec& spec, std::uint64_t seed);

}  // namespace polsym
