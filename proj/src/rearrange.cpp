#include "polsym/rearrange.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace polsym {

RadialOrder::RadialOrder(const GridSpec& spec) : order_(spec.size()), rank_(spec.size()) {
    std::vector<std::int64_t> r2(spec.size());
    for (std::size_t i = 0; i < r2.size(); ++i) r2[i] = spec.radius2_cells(i);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return r2[a] != r2[b] ? r2[a] < r2[b] : a < b;
    });
    for (std::size_t k = 0; k < order_.size(); ++k) rank_[order_[k]] = k;
}

std::shared_ptr<const RadialOrder> RadialOrder::for_grid(const GridSpec& spec) {
    struct Key {
        std::vector<int> shape;
        double h;
        bool operator<(const Key& o) const { return std::tie(shape, h) < std::tie(o.shape, o.h); }
    };
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const RadialOrder>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[Key{spec.shape(), spec.spacing()}];
    if (!slot) slot = std::make_shared<const RadialOrder>(spec);
    return slot;
}

GridFunction schwarz_symmetrize(const GridFunction& u) {
    const auto& spec = u.spec();
    const auto order = RadialOrder::for_grid(spec);
    std::vector<double> sorted(u.values().begin(), u.values().end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    std::vector<double> out(spec.size(), 0.0);
    const auto& cells = order->order();
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (sorted[k] != 0.0 && spec.on_boundary(cells[k]))
            throw Error("schwarz_symmetrize: symmetrized support reaches the boundary layer; "
                        "enlarge the box");
        out[cells[k]] = sorted[k];
    }
    return GridFunction(spec, std::move(out));
}

bool is_radially_nonincreasing(const GridFunction& u) {
    const auto order = RadialOrder::for_grid(u.spec());
    const auto& cells = order->order();
    for (std::size_t k = 1; k < cells.size(); ++k)
        if (u[cells[k]] > u[cells[k - 1]]) return false;
    return true;
}

double esssup(const GridFunction& u) {
    const auto v = u.values();
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace polsym
