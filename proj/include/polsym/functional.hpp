#pragma once

#include <span>
#include <vector>

#include "polsym/grid.hpp"
#include "polsym/integrand.hpp"

namespace polsym {

/// Forward differences D_i u[c] = (u[c + e_i] - u[c]) / h, zero on the last
/// layer of axis i, and the per-cell Euclidean magnitude.
struct GradientField {
    std::vector<std::vector<double>> components;
    std::vector<double> magnitude;

    int dim() const { return static_cast<int>(components.size()); }
};

GradientField gradient(const GridFunction& u);

/// J(u) = h^N sum_c j(u[c], |grad u|[c]), summed with the deterministic
/// blocked compensated reduction. Throws polsym::Error naming the first
/// cell where j is not finite.
double evaluate_functional(const GridFunction& u, const Integrand& j);

/// sum_i h^N sum_c |D_i u[c]|^(p_i) for i < exponents.size() <= dim.
double evaluate_anisotropic(const GridFunction& u, std::span<const double> exponents);

/// ||D_i u||_p.
double partial_lp_norm(const GridFunction& u, int axis, double p);
/// || |grad u| ||_p.
double gradient_lp_norm(const GridFunction& u, double p);

}  // namespace polsym
