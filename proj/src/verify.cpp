#include "polsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "polsym/functional.hpp"
#include "polsym/rearrange.hpp"

namespace polsym {
namespace {

std::vector<double> linspace(double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = hi * k / (n - 1);
    return v;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

InequalityVerdict make_verdict(double J_u, double J_ustar, double tol, AdmissibilityReport adm) {
    InequalityVerdict v;
    v.J_u = J_u;
    v.J_ustar = J_ustar;
    v.slack = J_u - J_ustar;
    v.tolerance = tol * (1.0 + std::abs(J_u));
    v.holds = J_ustar <= J_u + v.tolerance;
    v.admissibility = adm;
    if (v.holds)
        v.verdict = VerdictClass::Holds;
    else
        v.verdict = adm.admissible() ? VerdictClass::Fails : VerdictClass::HypothesisNotMet;
    return v;
}

// Integer centroid numerator and count of the superlevel set {u > level}.
std::pair<std::array<std::int64_t, kMaxDim>, std::int64_t> superlevel_sum(const GridFunction& u, double level) {
    std::array<std::int64_t, kMaxDim> sum{0, 0, 0};
    std::int64_t count = 0;
    for (std::size_t c = 0; c < u.size(); ++c) {
        if (!(u[c] > level)) continue;
        const auto k = u.spec().cell_of(c);
        for (std::size_t a = 0; a < sum.size(); ++a) sum[a] += k[a];
        ++count;
    }
    return {sum, count};
}

}  // namespace

std::string to_string(VerdictClass verdict) {
    switch (verdict) {
        case VerdictClass::Holds: return "HOLDS";
        case VerdictClass::Fails: return "FAIL";
        case VerdictClass::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
    }
    return "UNKNOWN";
}

std::string to_string(EqualityStatus status) {
    switch (status) {
        case EqualityStatus::NotEqualityCase: return "NOT_EQUALITY_CASE";
        case EqualityStatus::CriticalSetPositive: return "CRITICAL_SET_POSITIVE";
        case EqualityStatus::TranslationFound: return "TRANSLATION_FOUND";
        case EqualityStatus::NoTranslation: return "NO_TRANSLATION";
    }
    return "UNKNOWN";
}

InequalityVerdict check_polya_szego(const GridFunction& u, const Integrand& j, double tol) {
    const GridFunction ustar = schwarz_symmetrize(u);
    const double J_u = evaluate_functional(u, j);
    const double J_ustar = evaluate_functional(ustar, j);

    const double s_max = std::max(esssup(u), 1e-300);
    const double t_max =
        std::max({max_of(gradient(u).magnitude), max_of(gradient(ustar).magnitude), 1e-300});
    const auto s = linspace(s_max, 17);
    const auto t = linspace(t_max, 17);
    return make_verdict(J_u, J_ustar, tol, check_admissibility(j, s, t));
}

InequalityVerdict check_anisotropic(const GridFunction& u, std::span<const double> exponents, double tol) {
    const GridFunction ustar = schwarz_symmetrize(u);
    // |xi_i|^(p_i) with p_i > 1 is continuous, convex and nondecreasing.
    return make_verdict(evaluate_anisotropic(u, exponents), evaluate_anisotropic(ustar, exponents), tol,
                        AdmissibilityReport{true, true, true});
}

GridFunction shift_cells(const GridFunction& u, const CellCoord& shift) {
    const auto& spec = u.spec();
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t c = 0; c < u.size(); ++c) {
        if (u[c] == 0.0) continue;
        CellCoord k = spec.cell_of(c);
        for (std::size_t a = 0; a < k.size(); ++a) k[a] += shift[a];
        const auto dst = spec.flat_of(k);
        if (dst < 0 || spec.on_boundary(static_cast<std::size_t>(dst)))
            throw Error("shift_cells: shifted support leaves the interior of the box");
        out[static_cast<std::size_t>(dst)] = u[c];
    }
    return GridFunction(spec, std::move(out));
}

EqualityCaseFinding analyze_equality_case(const GridFunction& u, const Integrand& j, double p, double tol) {
    const auto nu = j.coercivity();
    if (!nu || !(*nu > 0.0) || !j.strictly_convex_in_t())
        throw std::invalid_argument("analyze_equality_case needs a strictly convex integrand with coercivity > 0");
    if (!(p > 1.0)) throw std::invalid_argument("analyze_equality_case needs p > 1");

    const auto& spec = u.spec();
    const GridFunction ustar = schwarz_symmetrize(u);
    const double M = esssup(u);

    EqualityCaseFinding f;
    f.J_u = evaluate_functional(u, j);
    f.J_ustar = evaluate_functional(ustar, j);
    f.grad_lp_u = gradient_lp_norm(u, p);
    f.grad_lp_ustar = gradient_lp_norm(ustar, p);
    f.residual = std::numeric_limits<double>::quiet_NaN();

    const auto g = gradient(ustar);
    const double grad_eps = 1e-9 * M / spec.spacing();
    std::size_t critical = 0;
    for (std::size_t c = 0; c < ustar.size(); ++c)
        if (g.magnitude[c] <= grad_eps && ustar[c] > 0.0 && ustar[c] < M) ++critical;
    f.critical_set_measure = spec.cell_volume() * static_cast<double>(critical);

    if (std::abs(f.J_u - f.J_ustar) > tol * (1.0 + std::abs(f.J_u))) {
        f.status = EqualityStatus::NotEqualityCase;
        return f;
    }
    f.norms_match = std::abs(f.grad_lp_u - f.grad_lp_ustar) <= tol * std::max(1.0, f.grad_lp_u);

    if (f.critical_set_measure > tol) {
        f.status = EqualityStatus::CriticalSetPositive;
        return f;
    }

    CellCoord x0{0, 0, 0};
    const auto [sum_u, n_u] = superlevel_sum(u, 0.5 * M);
    const auto [sum_s, n_s] = superlevel_sum(ustar, 0.5 * M);
    if (n_u > 0 && n_s > 0) {
        for (std::size_t a = 0; a < x0.size(); ++a) {
            const double offset = static_cast<double>(sum_u[a]) / static_cast<double>(n_u) -
                                  static_cast<double>(sum_s[a]) / static_cast<double>(n_s);
            x0[a] = static_cast<std::int64_t>(std::llround(offset));
        }
    }

    try {
        const GridFunction moved = shift_cells(ustar, x0);
        f.residual = lp_distance(u, moved, p);
    } catch (const Error&) {
        f.status = EqualityStatus::NoTranslation;
        return f;
    }
    if (f.residual <= tol * std::max(1.0, lp_norm(u, p))) {
        f.translation = x0;
        f.status = EqualityStatus::TranslationFound;
    } else {
        f.status = EqualityStatus::NoTranslation;
    }
    return f;
}

}  // namespace polsym
