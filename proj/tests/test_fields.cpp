#include <doctest.h>

#include "support.hpp"
#include "ymh/solve.hpp"

using namespace ymh;
using namespace ymh::test;

TEST_CASE("energy of constant fields") {
    const TorusGeometry g({8, 8}, {1.0, 1.0});
    const BundleData t = build_background(g, chern2(0));
    for (double eps : {0.05, 0.3, 2.0}) CHECK(g_energy(Section(g, 1.0), Gauge1Form(g), t, eps).total == 0.0);

    const EnergyBreakdown zero = g_energy(Section(g), Gauge1Form(g), t, 0.5);
    CHECK(zero.potential == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(zero.kinetic == 0.0);
    CHECK(zero.curvature == 0.0);

    const BundleData b = build_background(g, chern2(1));
    const EnergyBreakdown flux = g_energy(Section(g), Gauge1Form(g), b, 0.5);
    CHECK(flux.potential == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(flux.curvature == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
    CHECK(flux.total == doctest::Approx(flux.kinetic + flux.potential + flux.curvature).epsilon(1e-15));

    CHECK(e_energy(Section(g, 1.0), t, 0.2).total == 0.0);
    CHECK(e_energy(Section(g), t, 1.0).total == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("epsilon must be positive") {
    const TorusGeometry g({4, 4}, {1.0, 1.0});
    const BundleData b = build_background(g, chern2(0));
    CHECK_THROWS_WITH_AS(g_energy(Section(g), Gauge1Form(g), b, 0.0), doctest::Contains("epsilon > 0"), InvalidArgument);
    CHECK_THROWS_AS(e_energy(Section(g), b, -1.0), InvalidArgument);
    CHECK_THROWS_AS(g_gradient(Section(g), Gauge1Form(g), b, 0.0), InvalidArgument);
}

TEST_CASE("e_energy is g_energy at A = 0 without the background curvature") {
    FieldSampler rng(31);
    const TorusGeometry g({8, 6}, {1.0, 1.4});
    const BundleData b = build_background(g, chern2(2));
    const Section u = rng.section(g);
    const double f0 = 0.5 * inner_product(b.f0, b.f0);
    CHECK(e_energy(u, b, 0.2).total == doctest::Approx(g_energy(u, Gauge1Form(g), b, 0.2).total - f0).epsilon(1e-12));
}

TEST_CASE("energy is gauge invariant") {
    FieldSampler rng(32);
    for (const auto& [g, c] : {std::pair{TorusGeometry({16, 16}, {1.0, 1.0}), chern3(1, 0, 0)},
                               std::pair{TorusGeometry({8, 8, 8}, {1.0, 1.0, 1.0}), chern3(1, 0, 2)}}) {
        const BundleData b = build_background(g, g.dim() == 2 ? chern2(1) : c);
        for (int t = 0; t < 10; ++t) {
            const Section u = rng.section(g);
            const Gauge1Form a = rng.gauge(g);
            const GaugePair p = apply_gauge(u, a, rng.phase(g));
            const EnergyBreakdown e0 = g_energy(u, a, b, 0.3);
            const EnergyBreakdown e1 = g_energy(p.section, p.gauge, b, 0.3);
            CHECK(std::abs(e0.total - e1.total) <= 1e-10 * e0.total);
            CHECK(std::abs(e0.kinetic - e1.kinetic) <= 1e-10 * e0.total);
            CHECK(std::abs(e0.curvature - e1.curvature) <= 1e-10 * e0.total);
        }
    }
}

TEST_CASE("gradient of the ground state vanishes") {
    const TorusGeometry g({8, 8}, {1.0, 1.0});
    const BundleData t = build_background(g, chern2(0));
    const GradientField grad = g_gradient(Section(g, 1.0), Gauge1Form(g), t, 0.2);
    CHECK(gradient_sup_norm(grad, g) == 0.0);
}

TEST_CASE("gradient matches central finite differences") {
    FieldSampler rng(33);
    const double step = 1e-5;
    for (const auto& g : {TorusGeometry({8, 8}, {1.0, 1.0}), TorusGeometry({5, 4, 6}, {1.0, 0.8, 1.1})}) {
        const BundleData b = build_background(g, g.dim() == 2 ? chern2(1) : chern3(0, 1, 1));
        for (int t = 0; t < 20; ++t) {
            const Section u = rng.section(g);
            const Gauge1Form a = rng.gauge(g);
            const double eps = 0.3;
            const GradientField grad = g_gradient(u, a, b, eps);
            const std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.size()) - 1));
            Gauge1Form ap = a;
            Gauge1Form am = a;
            ap.values()[e] += step;
            am.values()[e] -= step;
            const double fd = (g_energy(u, ap, b, eps).total - g_energy(u, am, b, eps).total) / (2 * step);
            CHECK(std::abs(fd - grad.gauge.values()[e]) < 1e-6 * std::abs(fd));
            const std::size_t x = static_cast<std::size_t>(rng.integer(0, static_cast<int>(u.size()) - 1));
            Section up = u;
            Section um = u;
            up[x] += Complex(0.0, step);
            um[x] -= Complex(0.0, step);
            const double fdu = (g_energy(up, a, b, eps).total - g_energy(um, a, b, eps).total) / (2 * step);
            CHECK(std::abs(fdu - grad.section[x].imag()) < 1e-6 * std::abs(fdu));
        }
    }
}

TEST_CASE("A-gradient is the second field equation residual") {
    FieldSampler rng(34);
    const TorusGeometry g({6, 7, 5}, {1.0, 1.2, 0.9});
    const BundleData b = build_background(g, chern3(1, -1, 0));
    const Section u = rng.section(g);
    const Gauge1Form a = rng.gauge(g);
    const GradientField grad = g_gradient(u, a, b, 0.4);
    Cochain expect = codifferential(curvature(a, b));
    expect -= supercurrent(u, a, b);
    expect *= g.cell_volume();
    CHECK(max_diff(expect, grad.gauge) <= 1e-12 * (1.0 + expect.max_abs()));
}

TEST_CASE("gradient is gauge equivariant") {
    FieldSampler rng(35);
    const TorusGeometry g({8, 8}, {1.0, 1.0});
    const BundleData b = build_background(g, chern2(1));
    const Section u = rng.section(g);
    const Gauge1Form a = rng.gauge(g);
    const GaugePhase theta = rng.phase(g);
    const GaugePair p = apply_gauge(u, a, theta);
    const GradientField g0 = g_gradient(u, a, b, 0.3);
    const GradientField g1 = g_gradient(p.section, p.gauge, b, 0.3);
    CHECK(max_diff(g0.gauge, g1.gauge) <= 1e-10 * (1.0 + g0.gauge.max_abs()));
    for (std::size_t x = 0; x < g.site_count(); ++x)
        CHECK(std::abs(g1.section[x] - std::polar(1.0, theta.theta.at(0, x)) * g0.section[x]) <=
              1e-10 * (1.0 + std::abs(g0.section[x])));
}

TEST_CASE("truncation") {
    const TorusGeometry g({4, 4}, {1.0, 1.0});
    const Section cut = truncate(Section(g, 2.0));
    for (const auto& z : cut.values()) CHECK(z == Complex(1.0, 0.0));
    FieldSampler rng(36);
    Section small(g);
    for (auto& z : small.values()) z = std::polar(rng.uniform(0.0, 1.0), rng.uniform(-3.0, 3.0));
    CHECK(truncate(small).values() == small.values());
}

TEST_CASE("truncation never increases the energy") {
    FieldSampler rng(37);
    const TorusGeometry g({8, 8}, {1.0, 1.0});
    const BundleData b = build_background(g, chern2(1));
    for (int t = 0; t < 100; ++t) {
        Section u(g);
        for (auto& z : u.values()) z = std::polar(rng.uniform(0.0, 3.0), rng.uniform(-M_PI, M_PI));
        const Gauge1Form a = rng.gauge(g);
        CHECK(g_energy(truncate(u), a, b, 0.2).total <= g_energy(u, a, b, 0.2).total);
    }
}

TEST_CASE("halving epsilon quadruples the potential") {
    FieldSampler rng(38);
    const TorusGeometry g({6, 6}, {1.0, 1.0});
    const BundleData b = build_background(g, chern2(0));
    for (int t = 0; t < 10; ++t) {
        const Section u = rng.section(g);
        const double eps = rng.uniform(0.05, 1.0);
        CHECK(g_energy(u, Gauge1Form(g), b, eps / 2).potential == 4.0 * g_energy(u, Gauge1Form(g), b, eps).potential);
    }
}

TEST_CASE("energy increments agree with differences of totals") {
    FieldSampler rng(39);
    const TorusGeometry g({6, 5, 4}, {1.0, 1.0, 1.0});
    const BundleData b = build_background(g, chern3(1, 0, 0));
    const Section u0 = rng.section(g);
    const Gauge1Form a0 = rng.gauge(g);
    const Section u1 = rng.section(g);
    const Gauge1Form a1 = rng.gauge(g);
    const auto d = detail::energy_change(u0, a0, u1, a1, b, 0.3);
    const auto e0 = detail::energy_sums(u0, a0, b, 0.3);
    const auto e1 = detail::energy_sums(u1, a1, b, 0.3);
    CHECK(static_cast<double>(d.kinetic) == doctest::Approx(static_cast<double>(e1.kinetic - e0.kinetic)).epsilon(1e-10));
    CHECK(static_cast<double>(d.potential) == doctest::Approx(static_cast<double>(e1.potential - e0.potential)).epsilon(1e-10));
    CHECK(static_cast<double>(d.curvature) == doctest::Approx(static_cast<double>(e1.curvature - e0.curvature)).epsilon(1e-10));
}

TEST_CASE("energy density partitions the rescaled energy") {
    FieldSampler rng(40);
    const TorusGeometry g({6, 5, 4}, {1.0, 1.2, 0.8});
    const BundleData b = build_background(g, chern3(1, 0, 1));
    const Section u = rng.section(g);
    const Gauge1Form a = rng.gauge(g);
    const double eps = 0.2;
    const Cochain mu = energy_density(u, a, b, eps);
    const double total = inner_product(mu, Cochain(g, 0, 1.0));
    CHECK(total == doctest::Approx(g_energy(u, a, b, eps).total / std::abs(std::log(eps))).epsilon(1e-10));
    const BundleData t = build_background(g, chern3(0, 0, 0));
    CHECK(energy_density(Section(g, 1.0), Gauge1Form(g), t, eps).max_abs() == 0.0);
    CHECK_THROWS_AS(energy_density(u, a, b, 1.0), InvalidArgument);
    CHECK_THROWS_AS(energy_density(u, a, b, 0.0), InvalidArgument);
}

TEST_CASE("energy density concentrates at the vortex of a minimizer" * doctest::test_suite("concentration")) {
    const TorusGeometry g({80, 80}, {1.0, 1.0});
    const ChernMatrix c = chern2(1);
    const BundleData b = build_background(g, c);
    const double eps = 0.05;
    const AnsatzField an = vortex_ansatz(*default_ansatz(g, c), b, eps);
    const MinimizerResult r = minimize(an.section, an.gauge, b, eps);
    REQUIRE(r.converged);
    const auto triples = sparse_windings(vorticity(r.section, r.gauge_field, b));
    REQUIRE(triples.size() == 1);
    const Coords core = g.coords(triples[0].site);
    const Cochain mu = energy_density(r.section, r.gauge_field, b, eps);
    const double background = 2 * M_PI * M_PI / std::abs(std::log(eps)) / g.site_count() / g.cell_volume();
    double near = 0.0;
    double all = 0.0;
    double near_excess = 0.0;
    double all_excess = 0.0;
    const double h = g.spacing(0);
    for (std::size_t x = 0; x < g.site_count(); ++x) {
        const Coords p = g.coords(x);
        double d2 = 0.0;
        for (int i = 0; i < 2; ++i) {
            double d = (p[i] - core[i] - 0.5) * h;
            d -= std::round(d);
            d2 += d * d;
        }
        all += mu.at(0, x);
        all_excess += mu.at(0, x) - background;
        if (std::sqrt(d2) <= 8 * h) {
            near += mu.at(0, x);
            near_excess += mu.at(0, x) - background;
        }
    }
    MESSAGE("share within 8h: " << near / all << " (excess over the uniform background field: "
                                << near_excess / all_excess << ")");
    CHECK(near / all >= 0.6);
}
