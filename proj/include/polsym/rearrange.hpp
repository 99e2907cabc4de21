#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "polsym/grid.hpp"

namespace polsym {

/// Cells sorted by (squared distance to the origin, flat index). The first
/// entry is the origin cell. This is the discrete carrier of radial
/// monotonicity: u* places the k-th largest value on order()[k].
class RadialOrder {
public:
    explicit RadialOrder(const GridSpec& spec);

    /// Shared, immutable order for a grid; built once per spec.
    static std::shared_ptr<const RadialOrder> for_grid(const GridSpec& spec);

    const std::vector<std::size_t>& order() const { return order_; }
    /// Position of a cell in the order.
    std::size_t rank(std::size_t flat) const { return rank_[flat]; }

private:
    std::vector<std::size_t> order_;
    std::vector<std::size_t> rank_;
};

/// Discrete Schwarz symmetrization: values sorted in descending order and
/// laid out along RadialOrder. Throws polsym::Error if a nonzero value
/// would land on the boundary layer.
GridFunction schwarz_symmetrize(const GridFunction& u);

/// True iff the values are nonincreasing along RadialOrder.
bool is_radially_nonincreasing(const GridFunction& u);

/// Maximum over cells.
double esssup(const GridFunction& u);

}  // namespace polsym
