#include "ymh/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ymh::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_header(std::ostream& os, int degree, const TorusGeometry& g, int components) {
    os << degree << ' ' << g.dim();
    for (int i = 0; i < g.dim(); ++i) os << ' ' << g.sites(i);
    for (int i = 0; i < g.dim(); ++i) os << ' ' << format_double(g.length(i));
    os << ' ' << components << '\n';
}

struct Header {
    int degree;
    TorusGeometry geometry;
    int components;
};

Header read_header(std::istream& is) {
    int degree = 0;
    int n = 0;
    if (!(is >> degree >> n)) throw Error("field dump: malformed header");
    if (n < 2 || n > kMaxDim) throw Error("field dump: bad dimension");
    std::vector<int> sites(static_cast<std::size_t>(n));
    std::vector<double> lengths(static_cast<std::size_t>(n));
    for (auto& s : sites)
        if (!(is >> s)) throw Error("field dump: malformed site counts");
    for (auto& l : lengths)
        if (!(is >> l)) throw Error("field dump: malformed lengths");
    int comps = 0;
    if (!(is >> comps)) throw Error("field dump: missing component count");
    return {degree, TorusGeometry(sites, lengths), comps};
}

void write_values(std::ostream& os, const std::vector<double>& v) {
    for (double x : v) os << format_double(x) << '\n';
}

}  // namespace

void write_cochain(std::ostream& os, const Cochain& c) {
    write_header(os, c.degree(), c.geometry(), c.components());
    write_values(os, c.values());
}

Cochain read_cochain(std::istream& is) {
    const Header h = read_header(is);
    Cochain c(h.geometry, h.degree);
    if (h.components != c.components()) throw Error("field dump: component count does not match degree");
    for (double& v : c.values())
        if (!(is >> v)) throw Error("field dump: truncated values");
    return c;
}

void write_section(std::ostream& os, const Section& u) {
    write_header(os, 0, u.geometry(), 2);
    for (const auto& z : u.values()) os << format_double(z.real()) << '\n';
    for (const auto& z : u.values()) os << format_double(z.imag()) << '\n';
}

Section read_section(std::istream& is) {
    const Header h = read_header(is);
    if (h.degree != 0 || h.components != 2) throw Error("section dump: expected degree 0 with 2 components");
    Section u(h.geometry);
    std::vector<double> re(u.size());
    for (double& v : re)
        if (!(is >> v)) throw Error("section dump: truncated values");
    for (std::size_t i = 0; i < u.size(); ++i) {
        double im = 0.0;
        if (!(is >> im)) throw Error("section dump: truncated values");
        u[i] = Complex(re[i], im);
    }
    return u;
}

void write_bundle(std::ostream& os, const BundleData& b) {
    const int n = b.geometry.dim();
    os << "chern " << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) os << (j ? " " : "") << b.chern(i, j);
        os << '\n';
    }
    write_cochain(os, b.theta0);
}

BundleData read_bundle(std::istream& is) {
    std::string tag;
    int n = 0;
    if (!(is >> tag >> n) || tag != "chern") throw Error("bundle dump: missing chern header");
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& r : rows)
        for (auto& v : r)
            if (!(is >> v)) throw Error("bundle dump: truncated chern matrix");
    const ChernMatrix chern = ChernMatrix::from_rows(rows);
    Cochain theta0 = read_cochain(is);
    if (theta0.degree() != 1) throw Error("bundle dump: theta0 must be a 1-cochain");
    BundleData b = build_background(theta0.geometry(), chern);
    b.theta0 = std::move(theta0);
    return b;
}

void write_vorticity(std::ostream& os, const VorticityField& v) {
    for (const auto& t : sparse_windings(v)) os << t.component << ' ' << t.site << ' ' << t.winding << '\n';
}

void Record::add(const std::string& key, double value) { entries.emplace_back(key, format_double(value)); }
void Record::add(const std::string& key, long value) { entries.emplace_back(key, std::to_string(value)); }
void Record::add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }

void add_energy(Record& r, const EnergyBreakdown& e, const std::string& prefix) {
    r.add(prefix + "kinetic", e.kinetic);
    r.add(prefix + "potential", e.potential);
    r.add(prefix + "curvature", e.curvature);
    r.add(prefix + "total", e.total);
    r.add(prefix + "epsilon", e.epsilon);
}

void write_record(std::ostream& os, const Record& r) {
    for (const auto& [k, v] : r.entries) os << k << ' ' << v << '\n';
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << contents;
}

}  // namespace ymh::io
