#include "polsym/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "polsym/grid.hpp"

namespace polsym {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Interval index and weight for linear interpolation on a sorted grid; the
// first/last interval is reused outside the range.
std::pair<std::size_t, double> locate(const std::vector<double>& grid, double x) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
    i = std::min(i, grid.size() - 2);
    return {i, (x - grid[i]) / (grid[i + 1] - grid[i])};
}

double table_eval(const TableBacked& tb, double s, double t) {
    const auto [i, ws] = locate(tb.s_grid, s);
    const auto [k, wt] = locate(tb.t_grid, t);
    const std::size_t nt = tb.t_grid.size();
    const double v00 = tb.values[i * nt + k];
    const double v01 = tb.values[i * nt + k + 1];
    const double v10 = tb.values[(i + 1) * nt + k];
    const double v11 = tb.values[(i + 1) * nt + k + 1];
    return (1 - ws) * ((1 - wt) * v00 + wt * v01) + ws * ((1 - wt) * v10 + wt * v11);
}

void check_grid(const std::vector<double>& g, const char* name) {
    if (g.size() < 2) throw Error(std::string("table: need at least two ") + name + " samples");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw Error(std::string("table: ") + name + " samples must increase");
}

void validate_table(const TableBacked& tb) {
    check_grid(tb.s_grid, "s");
    check_grid(tb.t_grid, "t");
    if (tb.values.size() != tb.s_grid.size() * tb.t_grid.size())
        throw Error("table: value count does not match ns*nt");
    for (double v : tb.values)
        if (!std::isfinite(v)) throw Error("table: non-finite value");
}

std::map<std::string, double> parse_kv(const std::string& text) {
    std::map<std::string, double> kv;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("integrand: expected key=value, got '" + item + "'");
        try {
            kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("integrand: bad number in '" + item + "'");
        }
    }
    return kv;
}

double require(const std::map<std::string, double>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error("integrand: missing '" + key + "'");
    return it->second;
}

}  // namespace

Integrand::Integrand(PowerP f) : family_(f) {
    if (!(f.p > 1.0)) throw std::invalid_argument("power integrand needs p > 1");
}

Integrand::Integrand(WeightedPower f) : family_(f) {
    if (!(f.p > 1.0) || !(f.alpha > 0.0))
        throw std::invalid_argument("weighted integrand needs p > 1 and alpha > 0");
}

Integrand::Integrand(TableBacked f) : family_(std::move(f)) { validate_table(std::get<TableBacked>(family_)); }

double Integrand::evaluate(double s, double t) const {
    return std::visit(overloaded{
                          [&](const PowerP& f) { return std::pow(t, f.p); },
                          [&](const WeightedPower& f) {
                              return 0.5 * (1.0 + std::pow(s, 2.0 * f.alpha)) * std::pow(t, f.p);
                          },
                          [&](const TableBacked& f) { return table_eval(f, s, t); },
                      },
                      family_);
}

std::optional<double> Integrand::coercivity() const {
    return std::visit(overloaded{
                          [](const PowerP&) -> std::optional<double> { return 1.0; },
                          [](const WeightedPower&) -> std::optional<double> { return 0.5; },
                          [](const TableBacked&) -> std::optional<double> { return std::nullopt; },
                      },
                      family_);
}

std::optional<double> Integrand::exponent() const {
    return std::visit(overloaded{
                          [](const PowerP& f) -> std::optional<double> { return f.p; },
                          [](const WeightedPower& f) -> std::optional<double> { return f.p; },
                          [](const TableBacked&) -> std::optional<double> { return std::nullopt; },
                      },
                      family_);
}

bool Integrand::strictly_convex_in_t() const { return !std::holds_alternative<TableBacked>(family_); }

std::string Integrand::describe() const {
    std::ostringstream os;
    os << std::setprecision(17);
    std::visit(overloaded{
                   [&](const PowerP& f) { os << "power:p=" << f.p; },
                   [&](const WeightedPower& f) { os << "weighted:alpha=" << f.alpha << ",p=" << f.p; },
                   [&](const TableBacked& f) { os << "table:" << f.source; },
               },
               family_);
    return os.str();
}

Integrand parse_integrand(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("integrand spec '" + text + "' has no family prefix");
    const std::string family = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    try {
        if (family == "power") return Integrand(PowerP{require(parse_kv(rest), "p")});
        if (family == "weighted") {
            const auto kv = parse_kv(rest);
            return Integrand(WeightedPower{require(kv, "alpha"), require(kv, "p")});
        }
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
    if (family == "table") return Integrand(load_table(rest));
    throw Error("unknown integrand family '" + family + "'");
}

TableBacked read_table(std::istream& in) {
    std::string magic, version, ns_tok, nt_tok;
    in >> magic >> version >> ns_tok >> nt_tok;
    if (magic != "JT" || version != "v1" || ns_tok.rfind("ns=", 0) != 0 || nt_tok.rfind("nt=", 0) != 0)
        throw Error("not a JT v1 table");
    std::size_t ns = 0, nt = 0;
    try {
        ns = std::stoul(ns_tok.substr(3));
        nt = std::stoul(nt_tok.substr(3));
    } catch (const std::exception&) {
        throw Error("table header: bad ns/nt");
    }
    TableBacked tb;
    auto read_n = [&](std::vector<double>& dst, std::size_t n) {
        dst.resize(n);
        for (auto& v : dst)
            if (!(in >> v)) throw Error("table: truncated data");
    };
    read_n(tb.s_grid, ns);
    read_n(tb.t_grid, nt);
    read_n(tb.values, ns * nt);
    validate_table(tb);
    return tb;
}

TableBacked load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open table '" + path + "'");
    auto tb = read_table(in);
    tb.source = path;
    return tb;
}

void write_table(std::ostream& out, const TableBacked& tb) {
    out << "JT v1 ns=" << tb.s_grid.size() << " nt=" << tb.t_grid.size() << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < tb.s_grid.size(); ++i) out << (i ? " " : "") << tb.s_grid[i];
    out << '\n';
    for (std::size_t i = 0; i < tb.t_grid.size(); ++i) out << (i ? " " : "") << tb.t_grid[i];
    out << '\n';
    for (std::size_t i = 0; i < tb.s_grid.size(); ++i) {
        for (std::size_t k = 0; k < tb.t_grid.size(); ++k)
            out << (k ? " " : "") << tb.values[i * tb.t_grid.size() + k];
        out << '\n';
    }
}

AdmissibilityReport check_admissibility(const Integrand& j, std::span<const double> s_samples,
                                        std::span<const double> t_samples) {
    if (s_samples.empty() || t_samples.empty())
        throw std::invalid_argument("check_admissibility: empty sample grid");
    if (!std::is_sorted(s_samples.begin(), s_samples.end()) ||
        !std::is_sorted(t_samples.begin(), t_samples.end()))
        throw std::invalid_argument("check_admissibility: samples must be sorted");

    constexpr double kAllowance = 1e-10;
    auto slack = [](double a, double b) { return kAllowance * std::max({1.0, std::abs(a), std::abs(b)}); };

    AdmissibilityReport report{true, true, true};

    // Continuity in s: inside each sampled s-interval, the largest step on
    // a 256-fold refinement must be small next to the interval's
    // oscillation. A jump keeps its full size under refinement.
    constexpr int kRefine = 256;
    for (double t : t_samples) {
        for (std::size_t i = 0; i + 1 < s_samples.size() && report.continuous_in_s; ++i) {
            const double a = s_samples[i], b = s_samples[i + 1];
            if (!(b > a)) continue;
            double lo = j.evaluate(a, t), hi = lo, prev = lo, step = 0.0;
            for (int k = 1; k <= kRefine; ++k) {
                const double v = j.evaluate(a + (b - a) * k / kRefine, t);
                if (!std::isfinite(v)) {
                    report.continuous_in_s = false;
                    break;
                }
                step = std::max(step, std::abs(v - prev));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                prev = v;
            }
            if (step > 0.25 * (hi - lo) + slack(lo, hi) && step > slack(lo, hi)) report.continuous_in_s = false;
        }
    }

    for (double s : s_samples) {
        std::vector<double> jt(t_samples.size());
        for (std::size_t k = 0; k < t_samples.size(); ++k) jt[k] = j.evaluate(s, t_samples[k]);

        double running_max = jt[0];
        for (std::size_t k = 1; k < jt.size(); ++k) {
            if (running_max > jt[k] + slack(running_max, jt[k])) report.nondecreasing_in_t = false;
            running_max = std::max(running_max, jt[k]);
        }
        for (std::size_t a = 0; a < jt.size() && report.convex_in_t; ++a) {
            for (std::size_t b = a + 1; b < jt.size(); ++b) {
                const double mid = j.evaluate(s, 0.5 * (t_samples[a] + t_samples[b]));
                const double chord = 0.5 * (jt[a] + jt[b]);
                if (mid > chord + slack(mid, chord)) {
                    report.convex_in_t = false;
                    break;
                }
            }
        }
    }
    return report;
}

}  // namespace polsym
