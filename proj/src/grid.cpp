#include "polsym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "polsym/reduce.hpp"

namespace polsym {

GridSpec::GridSpec(std::vector<int> shape, double spacing)
    : shape_(std::move(shape)), spacing_(spacing) {
    if (shape_.empty() || shape_.size() > static_cast<std::size_t>(kMaxDim))
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw std::invalid_argument("grid spacing must be positive and finite");
    for (int n : shape_) {
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("grid shape entries must be odd and >= 3, got " +
                                        std::to_string(n));
    }
    strides_.assign(shape_.size(), 1);
    for (int a = dim() - 2; a >= 0; --a)
        strides_[static_cast<std::size_t>(a)] =
            strides_[static_cast<std::size_t>(a) + 1] * static_cast<std::size_t>(shape_[a + 1]);
    size_ = strides_[0] * static_cast<std::size_t>(shape_[0]);
    cell_volume_ = std::pow(spacing_, dim());
}

double GridSpec::extent(int axis) const {
    return static_cast<double>(half_cells(axis)) * spacing_;
}

CellCoord GridSpec::cell_of(std::size_t flat) const {
    CellCoord c{0, 0, 0};
    for (int a = 0; a < dim(); ++a) {
        const auto idx = flat / stride(a);
        flat -= idx * stride(a);
        c[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(idx) - half_cells(a);
    }
    return c;
}

std::int64_t GridSpec::flat_of(const CellCoord& cell) const {
    std::int64_t flat = 0;
    for (int a = 0; a < dim(); ++a) {
        const std::int64_t idx = cell[static_cast<std::size_t>(a)] + half_cells(a);
        if (idx < 0 || idx >= shape(a)) return -1;
        flat += idx * static_cast<std::int64_t>(stride(a));
    }
    return flat;
}

std::array<double, kMaxDim> GridSpec::position(std::size_t flat) const {
    const CellCoord c = cell_of(flat);
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim(); ++a)
        x[static_cast<std::size_t>(a)] = static_cast<double>(c[static_cast<std::size_t>(a)]) * spacing_;
    return x;
}

std::int64_t GridSpec::radius2_cells(std::size_t flat) const {
    const CellCoord c = cell_of(flat);
    return c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
}

bool GridSpec::on_boundary(std::size_t flat) const {
    const CellCoord c = cell_of(flat);
    for (int a = 0; a < dim(); ++a) {
        const auto k = c[static_cast<std::size_t>(a)];
        if (k == -half_cells(a) || k == half_cells(a)) return true;
    }
    return false;
}

void validate_grid_values(const GridSpec& spec, std::span<const double> values) {
    if (values.size() != spec.size()) {
        std::ostringstream msg;
        msg << "grid function has " << values.size() << " values, grid has " << spec.size()
            << " cells";
        throw Error(msg.str());
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v)) throw Error("non-finite value at cell " + std::to_string(i));
        if (v < 0.0) throw Error("negative value at cell " + std::to_string(i));
        if (v != 0.0 && spec.on_boundary(i))
            throw Error("nonzero value on the boundary layer at cell " + std::to_string(i) +
                        "; support must stay inside the box");
    }
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
    validate_grid_values(spec_, values_);
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
    return GridFunction(spec, std::vector<double>(spec.size(), 0.0));
}

std::size_t ValueMultiset::total_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.second;
    return n;
}

double distribution_function(const GridFunction& u, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("distribution_function needs t >= 0");
    const auto vals = u.values();
    const auto count = std::count_if(vals.begin(), vals.end(), [t](double v) { return v > t; });
    return u.spec().cell_volume() * static_cast<double>(count);
}

ValueMultiset value_multiset(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    ValueMultiset ms;
    for (double v : sorted) {
        if (!ms.entries.empty() && ms.entries.back().first == v)
            ++ms.entries.back().second;
        else
            ms.entries.emplace_back(v, 1);
    }
    return ms;
}

ValueMultiset value_multiset(const GridFunction& u) { return value_multiset(u.values()); }

double lp_norm(std::span<const double> values, double cell_volume, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("lp_norm needs p > 1");
    const double s = deterministic_sum(values.size(), [&](std::size_t i) {
        return std::pow(std::abs(values[i]), p);
    });
    return std::pow(cell_volume * s, 1.0 / p);
}

double lp_norm(const GridFunction& u, double p) {
    return lp_norm(u.values(), u.spec().cell_volume(), p);
}

double lp_distance(const GridFunction& u, const GridFunction& v, double p) {
    if (!(u.spec() == v.spec())) throw std::invalid_argument("lp_distance: grids differ");
    if (!(p > 1.0)) throw std::invalid_argument("lp_distance needs p > 1");
    const auto a = u.values();
    const auto b = v.values();
    const double s = deterministic_sum(a.size(), [&](std::size_t i) {
        return std::pow(std::abs(a[i] - b[i]), p);
    });
    return std::pow(u.spec().cell_volume() * s, 1.0 / p);
}

}  // namespace polsym
