#include "polsym/functional.hpp"

#include <cmath>
#include <sstream>

#include "polsym/reduce.hpp"

namespace polsym {

GradientField gradient(const GridFunction& u) {
    const auto& spec = u.spec();
    const int dim = spec.dim();
    const auto vals = u.values();
    const double h = spec.spacing();
    const auto n = static_cast<long long>(vals.size());

    GradientField g;
    g.components.assign(static_cast<std::size_t>(dim), std::vector<double>(vals.size(), 0.0));
    g.magnitude.assign(vals.size(), 0.0);

#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(i);
        double m2 = 0.0;
        std::size_t rest = c;
        for (int a = 0; a < dim; ++a) {
            const std::size_t stride = spec.stride(a);
            const std::size_t idx = rest / stride;
            rest -= idx * stride;
            double d = 0.0;
            if (idx + 1 < static_cast<std::size_t>(spec.shape(a))) d = (vals[c + stride] - vals[c]) / h;
            g.components[static_cast<std::size_t>(a)][c] = d;
            m2 += d * d;
        }
        g.magnitude[c] = std::sqrt(m2);
    }
    return g;
}

double evaluate_functional(const GridFunction& u, const Integrand& j) {
    const auto g = gradient(u);
    const auto vals = u.values();
    std::vector<double> terms(vals.size());
    const auto n = static_cast<long long>(vals.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(i);
        terms[c] = j.evaluate(vals[c], g.magnitude[c]);
    }
    for (std::size_t c = 0; c < terms.size(); ++c) {
        if (!std::isfinite(terms[c])) {
            const auto k = u.spec().cell_of(c);
            std::ostringstream msg;
            msg << "integrand " << j.describe() << " is not finite at cell " << c << " (";
            for (int a = 0; a < u.spec().dim(); ++a) msg << (a ? "," : "") << k[static_cast<std::size_t>(a)];
            msg << "), u=" << vals[c] << ", |grad u|=" << g.magnitude[c];
            throw Error(msg.str());
        }
    }
    return u.spec().cell_volume() * deterministic_sum(terms);
}

double evaluate_anisotropic(const GridFunction& u, std::span<const double> exponents) {
    if (exponents.empty() || static_cast<int>(exponents.size()) > u.spec().dim())
        throw std::invalid_argument("evaluate_anisotropic: need 1 <= m <= dim exponents");
    for (double p : exponents)
        if (!(p > 1.0)) throw std::invalid_argument("evaluate_anisotropic: exponents must exceed 1");
    const auto g = gradient(u);
    double total = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        const auto& d = g.components[i];
        const double p = exponents[i];
        total += u.spec().cell_volume() *
                 deterministic_sum(d.size(), [&](std::size_t c) { return std::pow(std::abs(d[c]), p); });
    }
    return total;
}

double partial_lp_norm(const GridFunction& u, int axis, double p) {
    if (axis < 0 || axis >= u.spec().dim()) throw std::invalid_argument("partial_lp_norm: bad axis");
    const auto g = gradient(u);
    return lp_norm(g.components[static_cast<std::size_t>(axis)], u.spec().cell_volume(), p);
}

double gradient_lp_norm(const GridFunction& u, double p) {
    const auto g = gradient(u);
    return lp_norm(g.magnitude, u.spec().cell_volume(), p);
}

}  // namespace polsym
