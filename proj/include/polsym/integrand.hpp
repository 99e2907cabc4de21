#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polsym {

/// j(s, t) = t^p.
struct PowerP {
    double p = 2.0;
};

/// j(s, t) = 1/2 (1 + s^(2 alpha)) t^p; no growth bound in s.
struct WeightedPower {
    double alpha = 1.0;
    double p = 2.0;
};

/// User-supplied j sampled on a tensor grid, evaluated bilinearly. Outside
/// the sampled rectangle the edge cell is extended linearly.
struct TableBacked {
    std::vector<double> s_grid;
    std::vector<double> t_grid;
    /// values[i * t_grid.size() + k] = j(s_grid[i], t_grid[k]).
    std::vector<double> values;
    std::string source;
};

/// Integrand j(s, t) for J(u) = sum h^N j(u, |grad u|).
class Integrand {
public:
    explicit Integrand(PowerP f);
    explicit Integrand(WeightedPower f);
    explicit Integrand(TableBacked f);

    double evaluate(double s, double t) const;

    /// nu' in j(s, t) >= nu' t^p: 1 for PowerP, 1/2 for WeightedPower,
    /// unknown for tables.
    std::optional<double> coercivity() const;
    /// The exponent p of the t^p factor, when the family has one.
    std::optional<double> exponent() const;
    /// Family metadata: t -> j(s, t) strictly convex (p > 1 families).
    bool strictly_convex_in_t() const;

    /// CLI spelling, e.g. "power:p=2".
    std::string describe() const;

    const auto& family() const { return family_; }

private:
    std::variant<PowerP, WeightedPower, TableBacked> family_;
};

/// Parses `power:p=2`, `weighted:alpha=1,p=2` or `table:<path>`.
Integrand parse_integrand(const std::string& text);

/// Table file: header "JT v1 ns=<n> nt=<m>", then n s-samples, m
/// t-samples and n*m row-major values (s-major).
TableBacked read_table(std::istream& in);
TableBacked load_table(const std::string& path);
void write_table(std::ostream& out, const TableBacked& table);

/// Samples an arbitrary callable onto a table.
template <typename F>
TableBacked tabulate(std::span<const double> s_grid, std::span<const double> t_grid, F&& j) {
    TableBacked table;
    table.s_grid.assign(s_grid.begin(), s_grid.end());
    table.t_grid.assign(t_grid.begin(), t_grid.end());
    table.values.reserve(s_grid.size() * t_grid.size());
    for (double s : s_grid)
        for (double t : t_grid) table.values.push_back(j(s, t));
    return table;
}

struct AdmissibilityReport {
    bool continuous_in_s = false;
    bool convex_in_t = false;
    bool nondecreasing_in_t = false;

    bool admissible() const { return continuous_in_s && convex_in_t && nondecreasing_in_t; }
};

/// Sampled checks of the three integrand conditions: continuity of
/// j(., t), midpoint convexity and monotonicity of j(s, .), each with a
/// 1e-10 allowance. Samples must be nonempty and sorted ascending.
AdmissibilityReport check_admissibility(const Integrand& j, std::span<const double> s_samples,
                                        std::span<const double> t_samples);

}  // namespace polsym
