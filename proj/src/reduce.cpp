#include "polsym/reduce.hpp"

namespace polsym {

double deterministic_sum(std::span<const double> terms) {
    return deterministic_sum(terms.size(), [terms](std::size_t i) { return terms[i]; });
}

}  // namespace polsym
