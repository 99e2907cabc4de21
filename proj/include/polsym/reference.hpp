#pragma once

#include <span>

#include "polsym/functional.hpp"
#include "polsym/grid.hpp"
#include "polsym/integrand.hpp"
#include "polsym/polarize.hpp"

// Serial reference kernels. They follow the definitions cell by cell in
// physical coordinates, without certificates, pairing or blocked
// reductions, and exist to pin the parallel kernels in tests and to give
// the benchmark a baseline.
namespace polsym::reference {

/// Exact polarization: sigma_H(x) evaluated in floating point and rounded
/// to the nearest cell center. Requires an Exact half-space.
GridFunction polarize_exact(const GridFunction& u, const HalfSpace& hs);

/// Interpolated polarization, one cell at a time.
GridFunction polarize_interp(const GridFunction& u, const HalfSpace& hs);

GradientField gradient(const GridFunction& u);

/// Row-major compensated sum of j(u, |grad u|) h^N.
double evaluate_functional(const GridFunction& u, const Integrand& j);

}  // namespace polsym::reference
