#include "ymh/vortex.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ymh/hodge.hpp"

namespace ymh {

namespace {

constexpr double kPi = std::numbers::pi;

inline Complex transported(const Section& u, const Cochain& a, const BundleData& b, int i, std::size_t x) {
    const auto& g = b.geometry;
    const double phase = b.theta0.at(i, x) + g.spacing(i) * a.at(i, x);
    return std::conj(u[x]) * u[g.shift(x, i)] * Complex(std::cos(phase), -std::sin(phase));
}

}  // namespace

Cochain VorticityField::density() const {
    Cochain out(geometry, 2);
    const auto& planes = component_axes(geometry.dim(), 2);
    for (std::size_t c = 0; c < planes.size(); ++c) {
        const double area = geometry.spacing(planes[c][0]) * geometry.spacing(planes[c][1]);
        auto dst = out.component(static_cast<int>(c));
        for (std::size_t x = 0; x < geometry.site_count(); ++x) dst[x] = at(static_cast<int>(c), x) / area;
    }
    return out;
}

Cochain supercurrent(const Section& u, const Gauge1Form& a, const BundleData& b) {
    require_compatible(u, a, b);
    const auto& g = b.geometry;
    Cochain j(g, 1);
    const auto sites = static_cast<std::ptrdiff_t>(g.site_count());
    for (int i = 0; i < g.dim(); ++i) {
        auto dst = j.component(i);
        const double h = g.spacing(i);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < sites; ++s) {
            const auto x = static_cast<std::size_t>(s);
            dst[x] = std::imag(transported(u, a, b, i, x)) / h;
        }
    }
    return j;
}

Cochain jacobian(const Section& u, const Gauge1Form& a, const BundleData& b) {
    Cochain out = exterior_derivative(supercurrent(u, a, b));
    out += curvature(a, b);
    out *= 0.5;
    return out;
}

Cochain link_phases(const Section& u, const Gauge1Form& a, const BundleData& b) {
    require_compatible(u, a, b);
    const auto& g = b.geometry;
    Cochain phi(g, 1);
    for (int i = 0; i < g.dim(); ++i) {
        auto dst = phi.component(i);
        for (std::size_t x = 0; x < g.site_count(); ++x) {
            double p = std::arg(transported(u, a, b, i, x));
            if (p <= -kPi) p = kPi;
            dst[x] = p;
        }
    }
    return phi;
}

VorticityField vorticity(const Section& u, const Gauge1Form& a, const BundleData& b) {
    const auto& g = b.geometry;
    const int n = g.dim();
    const Cochain phi = link_phases(u, a, b);
    const Cochain f = curvature(a, b);
    const auto& planes = component_axes(n, 2);
    VorticityField v{g, std::vector<int>(g.cell_count(2), 0)};

    std::vector<PlaquetteRef> flagged;
    double worst_residue = 0.0;
    for (std::size_t c = 0; c < planes.size(); ++c) {
        const int i = planes[c][0];
        const int j = planes[c][1];
        const double area = g.spacing(i) * g.spacing(j);
        const auto pi_ = phi.component(i);
        const auto pj = phi.component(j);
        const auto fc = f.component(static_cast<int>(c));
        for (std::size_t x = 0; x < g.site_count(); ++x) {
            const std::size_t xi = g.shift(x, i);
            const std::size_t xj = g.shift(x, j);
            const std::size_t xij = g.shift(xi, j);
            if (u[x] == 0.0 || u[xi] == 0.0 || u[xj] == 0.0 || u[xij] == 0.0) {
                flagged.push_back({static_cast<int>(c), x});
                continue;
            }
            const double circulation = pi_[x] + pj[xi] - pi_[xj] - pj[x];
            const double raw = (circulation + area * fc[x]) / (2.0 * kPi);
            const double rounded = std::round(raw);
            worst_residue = std::max(worst_residue, std::abs(raw - rounded));
            v.windings[c * g.site_count() + x] = static_cast<int>(rounded);
        }
    }
    if (!flagged.empty()) throw ZeroOnPlaquette(std::move(flagged));
    if (worst_residue > 1e-8)
        throw Error("vorticity: plaquette winding failed the integrality check (residue " +
                    std::to_string(worst_residue) + ")");
    return v;
}

double vortex_mass(const VorticityField& v) {
    const auto& g = v.geometry;
    const int n = g.dim();
    const auto& planes = component_axes(n, 2);
    double mass = 0.0;
    for (std::size_t c = 0; c < planes.size(); ++c) {
        const double weight = n == 3 ? g.spacing(transverse_axis(planes[c][0], planes[c][1])) : 1.0;
        long total = 0;
        for (std::size_t x = 0; x < g.site_count(); ++x) total += std::abs(v.at(static_cast<int>(c), x));
        mass += static_cast<double>(total) * weight;
    }
    return mass;
}

std::vector<long> winding_slice_sums(const VorticityField& v, int i, int j) {
    const auto& g = v.geometry;
    const int n = g.dim();
    if (i > j) std::swap(i, j);
    const int c = plane_component(n, i, j);
    const int slices = n == 3 ? g.sites(transverse_axis(i, j)) : 1;
    std::vector<long> sums(static_cast<std::size_t>(slices), 0);
    for (std::size_t x = 0; x < g.site_count(); ++x) {
        const int slice = n == 3 ? g.coords(x)[transverse_axis(i, j)] : 0;
        sums[static_cast<std::size_t>(slice)] += v.at(c, x);
    }
    return sums;
}

bool matches_chern(const VorticityField& v, const ChernMatrix& chern) {
    const int n = v.geometry.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (long s : winding_slice_sums(v, i, j))
                if (s != chern(i, j)) return false;
    return true;
}

std::vector<WindingTriple> sparse_windings(const VorticityField& v) {
    std::vector<WindingTriple> out;
    const std::size_t sites = v.geometry.site_count();
    for (std::size_t idx = 0; idx < v.windings.size(); ++idx)
        if (v.windings[idx] != 0) out.push_back({static_cast<int>(idx / sites), idx % sites, v.windings[idx]});
    return out;
}

DualLoopReport analyse_dual_loops(const VorticityField& v) {
    const auto& g = v.geometry;
    DualLoopReport r;
    for (int w : v.windings) r.support_size += w != 0 ? 1 : 0;
    if (g.dim() != 3) {
        r.closed = true;
        r.components = static_cast<int>(r.support_size);
        r.simple = true;
        return r;
    }
    const std::size_t sites = g.site_count();
    const int c01 = plane_component(3, 0, 1);
    const int c02 = plane_component(3, 0, 2);
    const int c12 = plane_component(3, 1, 2);
    r.closed = true;
    for (std::size_t x = 0; x < sites; ++x) {
        const long div = (v.at(c12, g.shift(x, 0)) - v.at(c12, x)) - (v.at(c02, g.shift(x, 1)) - v.at(c02, x)) +
                         (v.at(c01, g.shift(x, 2)) - v.at(c01, x));
        if (div != 0) r.closed = false;
    }

    // Plaquette (i, j) at x separates the cubes based at x - e_k and x.
    std::vector<std::size_t> parent(sites);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<int> degree(sites, 0);
    const auto& planes = component_axes(3, 2);
    for (std::size_t c = 0; c < planes.size(); ++c) {
        const int k = transverse_axis(planes[c][0], planes[c][1]);
        for (std::size_t x = 0; x < sites; ++x) {
            if (v.at(static_cast<int>(c), x) == 0) continue;
            const std::size_t lo = g.shift(x, k, -1);
            degree[lo] += 1;
            degree[x] += 1;
            parent[find(lo)] = find(x);
        }
    }
    r.simple = true;
    int comps = 0;
    for (std::size_t x = 0; x < sites; ++x) {
        if (degree[x] != 0 && degree[x] != 2) r.simple = false;
        if (degree[x] > 0 && find(x) == x) ++comps;
    }
    r.components = comps;
    return r;
}

double h_minus1_distance(const Cochain& a, const Cochain& b) {
    require_same_shape(a, b, "h_minus1_distance");
    const Cochain diff = a - b;
    const double s = inner_product(diff, solve_london(diff));
    return std::sqrt(std::max(0.0, s));
}

}  // namespace ymh
