#include "polsym/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace polsym {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error(std::string("cannot parse ") + what + " from '" + s + "'");
    }
    if (used != s.size()) throw Error(std::string("trailing characters in ") + what + ": '" + s + "'");
    return v;
}

int to_int(const std::string& s, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(std::string("cannot parse ") + what + " from '" + s + "'");
    return v;
}

std::string field(const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0) throw Error("grid header: expected '" + key + "=', got '" + token + "'");
    return token.substr(key.size() + 1);
}

}  // namespace

void write_grid(std::ostream& out, const GridFunction& u) {
    const auto& spec = u.spec();
    out << "GF v1 dim=" << spec.dim() << " shape=";
    for (int a = 0; a < spec.dim(); ++a) out << (a ? "," : "") << spec.shape(a);
    out << " h=" << std::setprecision(17) << spec.spacing() << '\n';
    const auto last = static_cast<std::size_t>(spec.shape(spec.dim() - 1));
    const auto vals = u.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        out << std::setprecision(17) << vals[i];
        out << ((i + 1) % last == 0 ? '\n' : ' ');
    }
}

GridFunction read_grid(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw Error("grid file is empty");
    std::istringstream hs(header);
    std::string magic, version, dim_tok, shape_tok, h_tok, extra;
    hs >> magic >> version >> dim_tok >> shape_tok >> h_tok;
    if (magic != "GF" || version != "v1") throw Error("not a GF v1 grid file");
    if (hs >> extra) throw Error("grid header: unexpected token '" + extra + "'");

    const int dim = to_int(field(dim_tok, "dim"), "dim");
    std::vector<int> shape;
    for (const auto& s : split(field(shape_tok, "shape"), ',')) shape.push_back(to_int(s, "shape"));
    if (static_cast<int>(shape.size()) != dim) throw Error("grid header: shape does not match dim");
    for (int n : shape)
        if (n % 2 == 0) throw Error("grid header: shape entries must be odd, got " + std::to_string(n));
    const double h = to_double(field(h_tok, "h"), "h");

    GridSpec spec;
    try {
        spec = GridSpec(shape, h);
    } catch (const std::invalid_argument& e) {
        throw Error(std::string("grid header: ") + e.what());
    }

    std::vector<double> values;
    values.reserve(spec.size());
    std::string tok;
    while (in >> tok) {
        const double v = to_double(tok, "grid value");
        if (v < 0.0) throw Error("grid value " + std::to_string(values.size()) + " is negative");
        values.push_back(v);
    }
    return GridFunction(spec, std::move(values));
}

void save_grid(const std::string& path, const GridFunction& u) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_grid(out, u);
    if (!out) throw Error("write to '" + path + "' failed");
}

GridFunction load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_grid(in);
}

GridSpec parse_grid_spec(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() < 3) throw Error("grid spec must be d,n1..nd,h");
    const int dim = to_int(parts[0], "dim");
    if (dim < 1 || dim > kMaxDim || parts.size() != static_cast<std::size_t>(dim) + 2)
        throw Error("grid spec '" + text + "' does not match d,n1..nd,h");
    std::vector<int> shape;
    for (int a = 0; a < dim; ++a) shape.push_back(to_int(parts[static_cast<std::size_t>(a) + 1], "shape"));
    const double h = to_double(parts.back(), "h");
    try {
        return GridSpec(shape, h);
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
}

}  // namespace polsym
