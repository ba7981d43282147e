#include "ymh/fields.hpp"

#include <cmath>

#include "ymh/detail/reduce.hpp"

namespace ymh {

namespace detail {

void require_epsilon(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("epsilon > 0 required");
}

namespace {

inline Complex link(double phase) { return {std::cos(phase), -std::sin(phase)}; }

inline double plaquette_curvature(const Cochain& a, const BundleData& b, int i, int j, int plane, std::size_t x) {
    const auto& g = b.geometry;
    const auto ai = a.component(i);
    const auto aj = a.component(j);
    return b.f0.at(plane, x) + (aj[g.shift(x, i)] - aj[x]) / g.spacing(i) - (ai[g.shift(x, j)] - ai[x]) / g.spacing(j);
}

}  // namespace

EnergySums energy_sums(const Section& u, const Cochain& a, const BundleData& b, double eps, bool with_curvature) {
    require_epsilon(eps);
    require_compatible(u, a, b);
    const auto& g = b.geometry;
    const int n = g.dim();
    const std::size_t sites = g.site_count();
    const long double dv = g.cell_volume();
    EnergySums s;

    s.kinetic = blocked_sum(sites * static_cast<std::size_t>(n), [&](std::size_t e) {
        const int i = static_cast<int>(e / sites);
        const std::size_t x = e % sites;
        const double h = g.spacing(i);
        const Complex w = (u[g.shift(x, i)] * link(b.theta0.at(i, x) + h * a.at(i, x)) - u[x]) / h;
        return 0.5L * std::norm(w);
    });

    s.potential = blocked_sum(sites, [&](std::size_t x) {
        const long double m = 1.0L - std::norm(u[x]);
        return m * m;
    });
    s.potential /= 4.0L * eps * eps;

    if (with_curvature) {
        const auto& planes = component_axes(n, 2);
        s.curvature = blocked_sum(sites * planes.size(), [&](std::size_t p) {
            const int c = static_cast<int>(p / sites);
            const std::size_t x = p % sites;
            const double f = plaquette_curvature(a, b, planes[c][0], planes[c][1], c, x);
            return 0.5L * f * f;
        });
    }
    s.kinetic *= dv;
    s.potential *= dv;
    s.curvature *= dv;
    return s;
}

EnergySums energy_change(const Section& u0, const Cochain& a0, const Section& u1, const Cochain& a1, const BundleData& b,
                         double eps, bool with_curvature) {
    require_epsilon(eps);
    require_compatible(u0, a0, b);
    require_compatible(u1, a1, b);
    const auto& g = b.geometry;
    const int n = g.dim();
    const std::size_t sites = g.site_count();
    const long double dv = g.cell_volume();
    EnergySums s;

    // Every term is expanded around the base point so that the difference is
    // formed from increments, never by subtracting two nearly equal energies.
    s.kinetic = blocked_sum(sites * static_cast<std::size_t>(n), [&](std::size_t e) {
        const int i = static_cast<int>(e / sites);
        const std::size_t x = e % sites;
        const std::size_t y = g.shift(x, i);
        const double h = g.spacing(i);
        const Complex z0 = link(b.theta0.at(i, x) + h * a0.at(i, x));
        const double half = 0.5 * h * (a1.at(i, x) - a0.at(i, x));
        const double sh = std::sin(half);
        // exp(-i h dA) - 1
        const Complex dz_rel(-2.0 * sh * sh, -std::sin(2.0 * half));
        const Complex z1 = z0 + z0 * dz_rel;
        const Complex w0 = (u0[y] * z0 - u0[x]) / h;
        const Complex dw = ((u1[y] - u0[y]) * z1 + u0[y] * z0 * dz_rel - (u1[x] - u0[x])) / h;
        return static_cast<long double>(std::real(std::conj(w0) * dw)) + 0.5L * std::norm(dw);
    });

    s.potential = blocked_sum(sites, [&](std::size_t x) {
        const Complex du = u1[x] - u0[x];
        const long double dm = -(2.0L * std::real(std::conj(u0[x]) * du) + static_cast<long double>(std::norm(du)));
        const long double m0 = 1.0L - std::norm(u0[x]);
        return dm * (2.0L * m0 + dm);
    });
    s.potential /= 4.0L * eps * eps;

    if (with_curvature) {
        const auto& planes = component_axes(n, 2);
        s.curvature = blocked_sum(sites * planes.size(), [&](std::size_t p) {
            const int c = static_cast<int>(p / sites);
            const std::size_t x = p % sites;
            const int i = planes[c][0];
            const int j = planes[c][1];
            const double f0 = plaquette_curvature(a0, b, i, j, c, x);
            const double df = ((a1.at(j, g.shift(x, i)) - a0.at(j, g.shift(x, i))) - (a1.at(j, x) - a0.at(j, x))) / g.spacing(i) -
                              ((a1.at(i, g.shift(x, j)) - a0.at(i, g.shift(x, j))) - (a1.at(i, x) - a0.at(i, x))) / g.spacing(j);
            return static_cast<long double>(f0) * df + 0.5L * df * df;
        });
    }
    s.kinetic *= dv;
    s.potential *= dv;
    s.curvature *= dv;
    return s;
}

EnergyBreakdown to_breakdown(const EnergySums& s, double eps) {
    EnergyBreakdown e;
    e.kinetic = static_cast<double>(s.kinetic);
    e.potential = static_cast<double>(s.potential);
    e.curvature = static_cast<double>(s.curvature);
    e.total = static_cast<double>(s.total());
    e.epsilon = eps;
    return e;
}

void gradient_into(const Section& u, const Cochain& a, const BundleData& b, double eps, Section& du, Cochain& da) {
    require_epsilon(eps);
    require_compatible(u, a, b);
    const auto& g = b.geometry;
    const int n = g.dim();
    const auto sites = static_cast<std::ptrdiff_t>(g.site_count());
    const double dv = g.cell_volume();
    const double inv_e2 = 1.0 / (eps * eps);

    // Per-edge covariant difference w, conj(link) * w, and supercurrent j.
    std::vector<Complex> w(g.cell_count(1));
    std::vector<Complex> back(g.cell_count(1));
    std::vector<double> current(g.cell_count(1));
    for (int i = 0; i < n; ++i) {
        const double h = g.spacing(i);
        const std::size_t off = static_cast<std::size_t>(i) * g.site_count();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < sites; ++s) {
            const auto x = static_cast<std::size_t>(s);
            const Complex z = link(b.theta0.at(i, x) + h * a.at(i, x));
            const Complex uy = u[g.shift(x, i)];
            w[off + x] = (uy * z - u[x]) / h;
            back[off + x] = std::conj(z) * w[off + x] / h;
            current[off + x] = std::imag(std::conj(u[x]) * uy * z) / h;
        }
    }

    const auto& planes = component_axes(n, 2);
    Cochain f(g, 2);
    for (std::size_t c = 0; c < planes.size(); ++c) {
        auto fc = f.component(static_cast<int>(c));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < sites; ++s) {
            const auto x = static_cast<std::size_t>(s);
            fc[x] = plaquette_curvature(a, b, planes[c][0], planes[c][1], static_cast<int>(c), x);
        }
    }

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < sites; ++s) {
        const auto x = static_cast<std::size_t>(s);
        Complex acc = -(1.0 - std::norm(u[x])) * u[x] * inv_e2;
        for (int i = 0; i < n; ++i) {
            const std::size_t off = static_cast<std::size_t>(i) * g.site_count();
            acc += -w[off + x] / g.spacing(i) + back[off + g.shift(x, i, -1)];
        }
        du[x] = acc * dv;
    }

    for (int i = 0; i < n; ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * g.site_count();
        auto dai = da.component(i);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < sites; ++s) {
            const auto x = static_cast<std::size_t>(s);
            double codiff = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const int c = plane_component(n, i, j);
                const double sign = i < j ? 1.0 : -1.0;
                const auto fc = f.component(c);
                codiff += sign * (fc[x] - fc[g.shift(x, j, -1)]) / g.spacing(j);
            }
            dai[x] = (codiff - current[off + x]) * dv;
        }
    }
}

}  // namespace detail

EnergyBreakdown g_energy(const Section& u, const Gauge1Form& a, const BundleData& b, double eps) {
    return detail::to_breakdown(detail::energy_sums(u, a, b, eps), eps);
}

EnergyBreakdown e_energy(const Section& u, const BundleData& b, double eps) {
    const Cochain zero(b.geometry, 1);
    return detail::to_breakdown(detail::energy_sums(u, zero, b, eps, false), eps);
}

GradientField g_gradient(const Section& u, const Gauge1Form& a, const BundleData& b, double eps) {
    GradientField out{Section(b.geometry), Gauge1Form(b.geometry)};
    detail::gradient_into(u, a, b, eps, out.section, out.gauge);
    return out;
}

Section truncate(const Section& u) {
    Section v = u;
    for (auto& z : v.values()) {
        const double r = std::abs(z);
        if (r > 1.0) {
            z /= r;
            while (std::abs(z) > 1.0) z *= std::nextafter(1.0, 0.0);
        }
    }
    return v;
}

Cochain energy_density(const Section& u, const Gauge1Form& a, const BundleData& b, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("energy_density: epsilon in (0, 1) required");
    require_compatible(u, a, b);
    const auto& g = b.geometry;
    const int n = g.dim();
    const std::size_t sites = g.site_count();

    std::vector<double> kin(g.cell_count(1));
    for (int i = 0; i < n; ++i) {
        const double h = g.spacing(i);
        for (std::size_t x = 0; x < sites; ++x) {
            const double phase = b.theta0.at(i, x) + h * a.at(i, x);
            const Complex z(std::cos(phase), -std::sin(phase));
            kin[i * sites + x] = 0.5 * std::norm((u[g.shift(x, i)] * z - u[x]) / h);
        }
    }
    const Cochain f = curvature(a, b);
    const double scale = 1.0 / std::abs(std::log(eps));
    const auto& planes = component_axes(n, 2);

    Cochain mu(g, 0);
    auto out = mu.component(0);
    for (std::size_t x = 0; x < sites; ++x) {
        const double m = 1.0 - std::norm(u[x]);
        double acc = m * m / (4.0 * eps * eps);
        for (int i = 0; i < n; ++i) acc += 0.5 * (kin[i * sites + x] + kin[i * sites + g.shift(x, i, -1)]);
        for (std::size_t c = 0; c < planes.size(); ++c) {
            const int i = planes[c][0];
            const int j = planes[c][1];
            const auto fc = f.component(static_cast<int>(c));
            const std::size_t xi = g.shift(x, i, -1);
            const std::size_t xj = g.shift(x, j, -1);
            const std::size_t xij = g.shift(xi, j, -1);
            acc += 0.125 * (fc[x] * fc[x] + fc[xi] * fc[xi] + fc[xj] * fc[xj] + fc[xij] * fc[xij]);
        }
        out[x] = acc * scale;
    }
    return mu;
}

}  // namespace ymh
