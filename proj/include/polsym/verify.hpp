#pragma once

#include <optional>
#include <span>
#include <string>

#include "polsym/grid.hpp"
#include "polsym/integrand.hpp"

namespace polsym {

enum class VerdictClass {
    Holds,
    /// J(u*) > J(u) + tolerance for an integrand that passed every sampled
    /// admissibility check.
    Fails,
    /// The inequality failed, but so did an admissibility check.
    HypothesisNotMet,
};

std::string to_string(VerdictClass verdict);

struct InequalityVerdict {
    double J_u = 0.0;
    double J_ustar = 0.0;
    double slack = 0.0;      ///< J_u - J_ustar
    double tolerance = 0.0;  ///< absolute tolerance actually applied
    bool holds = false;      ///< J_ustar <= J_u + tolerance
    VerdictClass verdict = VerdictClass::Fails;
    AdmissibilityReport admissibility;
};

/// Checks J(u*) <= J(u) + tol * (1 + |J(u)|). Admissibility is sampled on
/// [0, max u] x [0, max |grad|] over u and u*.
InequalityVerdict check_polya_szego(const GridFunction& u, const Integrand& j, double tol);

/// Same check for sum_i h^N sum |D_i u|^(p_i).
InequalityVerdict check_anisotropic(const GridFunction& u, std::span<const double> exponents, double tol);

enum class EqualityStatus {
    /// |J(u) - J(u*)| exceeded the tolerance; nothing further is claimed.
    NotEqualityCase,
    /// u* has a flat region strictly between 0 and M; no rigidity claim.
    CriticalSetPositive,
    /// u is a grid translate of u*.
    TranslationFound,
    /// The centroid shift does not reproduce u.
    NoTranslation,
};

std::string to_string(EqualityStatus status);

struct EqualityCaseFinding {
    EqualityStatus status = EqualityStatus::NotEqualityCase;
    double J_u = 0.0;
    double J_ustar = 0.0;
    double grad_lp_u = 0.0;
    double grad_lp_ustar = 0.0;
    /// Gradient norms agree within tol; absent outside the equality case.
    std::optional<bool> norms_match;
    /// h^N #{c : |grad u*|[c] <= 1e-9 M / h and 0 < u*[c] < M}.
    double critical_set_measure = 0.0;
    /// x0 in cells; present only when the residual is below tolerance.
    std::optional<CellCoord> translation;
    /// ||u - u*(. - x0)||_p for the candidate x0 (NaN when not computed).
    double residual = 0.0;
};

/// Equality-case analysis for a strictly convex integrand with known
/// coercivity; throws std::invalid_argument otherwise.
EqualityCaseFinding analyze_equality_case(const GridFunction& u, const Integrand& j, double p, double tol);

/// u(. - shift) on the same grid; cells shifted in from outside read zero.
/// Throws polsym::Error if support would be shifted onto the boundary layer.
GridFunction shift_cells(const GridFunction& u, const CellCoord& shift);

}  // namespace polsym
