#include "ymh/reference.hpp"

#include <cmath>

namespace ymh::reference {

namespace {

struct Grid {
    const TorusGeometry& g;
    int n0, n1, n2;
    explicit Grid(const TorusGeometry& geom)
        : g(geom), n0(geom.sites(0)), n1(geom.sites(1)), n2(geom.dim() == 3 ? geom.sites(2) : 1) {}

    std::size_t at(int a, int b, int c) const {
        a = (a % n0 + n0) % n0;
        b = (b % n1 + n1) % n1;
        c = (c % n2 + n2) % n2;
        return (static_cast<std::size_t>(a) * n1 + b) * n2 + c;
    }
    // Index of the neighbour of (a, b, c) displaced by `step` along `axis`.
    std::size_t nb(int a, int b, int c, int axis, int step) const {
        if (axis == 0) return at(a + step, b, c);
        if (axis == 1) return at(a, b + step, c);
        return at(a, b, c + step);
    }
};

template <class F>
void for_sites(const Grid& grid, F&& f) {
    for (int a = 0; a < grid.n0; ++a)
        for (int b = 0; b < grid.n1; ++b)
            for (int c = 0; c < grid.n2; ++c) f(a, b, c, grid.at(a, b, c));
}

}  // namespace

Cochain exterior_derivative(const Cochain& w) {
    const auto& g = w.geometry();
    const int n = g.dim();
    const int k = w.degree();
    if (k >= n) throw DegreeError("reference d: degree out of range");
    const Grid grid(g);
    Cochain out(g, k + 1);
    if (k == 0) {
        for_sites(grid, [&](int a, int b, int c, std::size_t x) {
            for (int i = 0; i < n; ++i) out.at(i, x) = (w.at(0, grid.nb(a, b, c, i, 1)) - w.at(0, x)) / g.spacing(i);
        });
    } else if (k == 1) {
        for_sites(grid, [&](int a, int b, int c, std::size_t x) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    out.at(plane_component(n, i, j), x) =
                        (w.at(j, grid.nb(a, b, c, i, 1)) - w.at(j, x)) / g.spacing(i) -
                        (w.at(i, grid.nb(a, b, c, j, 1)) - w.at(i, x)) / g.spacing(j);
        });
    } else {
        const int c01 = plane_component(3, 0, 1);
        const int c02 = plane_component(3, 0, 2);
        const int c12 = plane_component(3, 1, 2);
        for_sites(grid, [&](int a, int b, int c, std::size_t x) {
            out.at(0, x) = (w.at(c12, grid.at(a + 1, b, c)) - w.at(c12, x)) / g.spacing(0) -
                           (w.at(c02, grid.at(a, b + 1, c)) - w.at(c02, x)) / g.spacing(1) +
                           (w.at(c01, grid.at(a, b, c + 1)) - w.at(c01, x)) / g.spacing(2);
        });
    }
    return out;
}

Cochain codifferential(const Cochain& w) {
    const auto& g = w.geometry();
    const int n = g.dim();
    const int k = w.degree();
    if (k < 1) throw DegreeError("reference d*: degree out of range");
    const Grid grid(g);
    Cochain out(g, k - 1);
    if (k == 1) {
        for_sites(grid, [&](int a, int b, int c, std::size_t x) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s -= (w.at(i, x) - w.at(i, grid.nb(a, b, c, i, -1))) / g.spacing(i);
            out.at(0, x) = s;
        });
    } else if (k == 2) {
        for_sites(grid, [&](int a, int b, int c, std::size_t x) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const int pc = plane_component(n, i, j);
                    const double sign = i < j ? 1.0 : -1.0;
                    s += sign * (w.at(pc, x) - w.at(pc, grid.nb(a, b, c, j, -1))) / g.spacing(j);
                }
                out.at(i, x) = s;
            }
        });
    } else {
        const int c01 = plane_component(3, 0, 1);
        const int c02 = plane_component(3, 0, 2);
        const int c12 = plane_component(3, 1, 2);
        for_sites(grid, [&](int a, int b, int c, std::size_t x) {
            out.at(c12, x) = -(w.at(0, x) - w.at(0, grid.at(a - 1, b, c))) / g.spacing(0);
            out.at(c02, x) = (w.at(0, x) - w.at(0, grid.at(a, b - 1, c))) / g.spacing(1);
            out.at(c01, x) = -(w.at(0, x) - w.at(0, grid.at(a, b, c - 1))) / g.spacing(2);
        });
    }
    return out;
}

EnergyBreakdown g_energy(const Section& u, const Gauge1Form& a, const BundleData& bd, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("epsilon > 0 required");
    const auto& g = bd.geometry;
    const int n = g.dim();
    const Grid grid(g);
    long double kin = 0.0L;
    long double pot = 0.0L;
    long double curv = 0.0L;
    for_sites(grid, [&](int p, int q, int r, std::size_t x) {
        const double m = 1.0 - std::norm(u[x]);
        pot += m * m / (4.0 * eps * eps);
        for (int i = 0; i < n; ++i) {
            const double h = g.spacing(i);
            const double phase = bd.theta0.at(i, x) + h * a.at(i, x);
            const Complex w = (u[grid.nb(p, q, r, i, 1)] * std::exp(Complex(0.0, -phase)) - u[x]) / h;
            kin += 0.5 * std::norm(w);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double f = bd.f0.at(plane_component(n, i, j), x) +
                                 (a.at(j, grid.nb(p, q, r, i, 1)) - a.at(j, x)) / g.spacing(i) -
                                 (a.at(i, grid.nb(p, q, r, j, 1)) - a.at(i, x)) / g.spacing(j);
                curv += 0.5 * f * f;
            }
    });
    const long double dv = g.cell_volume();
    EnergyBreakdown e;
    e.kinetic = static_cast<double>(kin * dv);
    e.potential = static_cast<double>(pot * dv);
    e.curvature = static_cast<double>(curv * dv);
    e.total = static_cast<double>((kin + pot + curv) * dv);
    e.epsilon = eps;
    return e;
}

GradientField g_gradient(const Section& u, const Gauge1Form& a, const BundleData& bd, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("epsilon > 0 required");
    const auto& g = bd.geometry;
    const int n = g.dim();
    const Grid grid(g);
    const double dv = g.cell_volume();
    GradientField out{Section(g), Gauge1Form(g)};

    // Scatter each edge and plaquette term onto the variables it depends on.
    for_sites(grid, [&](int p, int q, int r, std::size_t x) {
        out.section[x] += -(1.0 - std::norm(u[x])) * u[x] / (eps * eps) * dv;
        for (int i = 0; i < n; ++i) {
            const double h = g.spacing(i);
            const std::size_t y = grid.nb(p, q, r, i, 1);
            const double phase = bd.theta0.at(i, x) + h * a.at(i, x);
            const Complex z = std::exp(Complex(0.0, -phase));
            const Complex w = (u[y] * z - u[x]) / h;
            out.section[x] += -w / h * dv;
            out.section[y] += std::conj(z) * w / h * dv;
            // d/dA of |w|^2 / 2 through the phase of z.
            const Complex dw = u[y] * z * Complex(0.0, -h) / h;
            out.gauge.at(i, x) += std::real(std::conj(w) * dw) * dv;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double hi = g.spacing(i);
                const double hj = g.spacing(j);
                const std::size_t xi = grid.nb(p, q, r, i, 1);
                const std::size_t xj = grid.nb(p, q, r, j, 1);
                const double f = bd.f0.at(plane_component(n, i, j), x) + (a.at(j, xi) - a.at(j, x)) / hi -
                                 (a.at(i, xj) - a.at(i, x)) / hj;
                out.gauge.at(j, xi) += f / hi * dv;
                out.gauge.at(j, x) -= f / hi * dv;
                out.gauge.at(i, xj) -= f / hj * dv;
                out.gauge.at(i, x) += f / hj * dv;
            }
    });
    return out;
}

}  // namespace ymh::reference
