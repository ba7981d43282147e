#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "ymh/hodge.hpp"
#include "ymh/solve.hpp"

namespace ymh {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Core {
    std::array<int, 2> base;       // plaquette base indices along the transverse axes
    std::array<double, 2> center;  // physical center of that plaquette
    int winding;
};

std::array<int, 2> transverse_axes(int n, int axis) {
    if (n == 2) return {0, 1};
    std::array<int, 2> t{};
    int m = 0;
    for (int i = 0; i < 3; ++i)
        if (i != axis) t[m++] = i;
    return t;
}

double periodic_offset(double d, double length) { return d - length * std::round(d / length); }

}  // namespace

AnsatzField vortex_ansatz(const AnsatzSpec& spec, const BundleData& b, double eps) {
    detail::require_epsilon(eps);
    if (spec.core_profile != "linear") throw InvalidArgument("vortex_ansatz: unknown core profile '" + spec.core_profile + "'");
    const auto& g = b.geometry;
    const int n = g.dim();
    if (n == 3 && (spec.axis < 0 || spec.axis > 2)) throw InvalidArgument("vortex_ansatz: axis must be 0, 1 or 2");
    const auto t = transverse_axes(n, spec.axis);
    const int plane = plane_component(n, t[0], t[1]);

    long total = 0;
    std::vector<Core> cores;
    for (const auto& v : spec.vortices) {
        std::array<double, 2> p{};
        if (v.position.size() == 2) {
            p = {v.position[0], v.position[1]};
        } else if (n == 3 && v.position.size() == 3) {
            p = {v.position[t[0]], v.position[t[1]]};
        } else {
            throw InvalidArgument("vortex_ansatz: vortex position needs the two transverse coordinates");
        }
        Core c{};
        for (int m = 0; m < 2; ++m) {
            const int axis = t[m];
            const double h = g.spacing(axis);
            int idx = static_cast<int>(std::floor(p[m] / h));
            idx %= g.sites(axis);
            if (idx < 0) idx += g.sites(axis);
            c.base[m] = idx;
            c.center[m] = (idx + 0.5) * h;
        }
        c.winding = v.winding;
        total += v.winding;
        cores.push_back(c);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const long expected = (i == t[0] && j == t[1]) ? total : 0;
            if (b.chern(i, j) != expected)
                throw WindingMismatch("vortex_ansatz: windings do not match the chern number c_" + std::to_string(i + 1) +
                                      std::to_string(j + 1) + " = " + std::to_string(b.chern(i, j)));
        }
    }

    // Prescribed plaquette windings (every slice along the line direction).
    VorticityField prescribed{g, std::vector<int>(g.cell_count(2), 0)};
    for (std::size_t x = 0; x < g.site_count(); ++x) {
        const Coords cx = g.coords(x);
        for (const auto& c : cores)
            if (cx[t[0]] == c.base[0] && cx[t[1]] == c.base[1])
                prescribed.windings[static_cast<std::size_t>(plane) * g.site_count() + x] += c.winding;
    }

    // Phase gradient a with d a = -F0 + 2 pi (vortex density): a = -d* G(source).
    Cochain source = prescribed.density();
    source *= kTwoPi;
    source -= b.f0;
    Cochain a = codifferential(green(source));
    a *= -1.0;

    // Fix the holonomy of theta0 + h a along one loop per axis to a multiple of 2 pi.
    for (int i = 0; i < n; ++i) {
        const double h = g.spacing(i);
        long double hol = 0.0L;
        std::size_t x = 0;
        for (int m = 0; m < g.sites(i); ++m) {
            hol += b.theta0.at(i, x) + h * a.at(i, x);
            x = g.shift(x, i);
        }
        const double r = static_cast<double>(hol - kTwoPi * std::round(hol / kTwoPi));
        for (double& v : a.component(i)) v -= r / g.length(i);
    }

    // Integrate the phase along a spanning tree rooted at the origin.
    std::vector<double> phase(g.site_count(), 0.0);
    for (std::size_t x = 1; x < g.site_count(); ++x) {
        const Coords cx = g.coords(x);
        int axis = n - 1;
        while (cx[axis] == 0) --axis;
        const std::size_t prev = g.shift(x, axis, -1);
        phase[x] = phase[prev] + b.theta0.at(axis, prev) + g.spacing(axis) * a.at(axis, prev);
    }

    AnsatzField out{Section(g), Gauge1Form(g), std::move(prescribed)};
    for (std::size_t x = 0; x < g.site_count(); ++x) {
        const Coords cx = g.coords(x);
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& c : cores) {
            const double d0 = periodic_offset(cx[t[0]] * g.spacing(t[0]) - c.center[0], g.length(t[0]));
            const double d1 = periodic_offset(cx[t[1]] * g.spacing(t[1]) - c.center[1], g.length(t[1]));
            dist = std::min(dist, std::hypot(d0, d1));
        }
        const double modulus = std::min(dist / eps, 1.0);
        out.section[x] = std::polar(modulus, phase[x]);
    }
    return out;
}

Section perturbed_ground_state(const TorusGeometry& g, std::uint64_t seed, double amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    Section u(g);
    for (std::size_t x = 0; x < g.site_count(); ++x) {
        const double re = noise(rng);
        const double im = noise(rng);
        u[x] = Complex(1.0 + amplitude * re, amplitude * im);
    }
    return u;
}

}  // namespace ymh
