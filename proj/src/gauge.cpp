#include "ymh/gauge.hpp"

#include <cmath>
#include <numbers>

#include "ymh/hodge.hpp"

namespace ymh {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Nearest integer, ties toward zero.
long round_ties_to_zero(double v) {
    const double f = std::floor(v);
    const double frac = v - f;
    if (frac > 0.5) return static_cast<long>(f) + 1;
    if (frac < 0.5) return static_cast<long>(f);
    return v > 0.0 ? static_cast<long>(f) : static_cast<long>(f) + 1;
}
}  // namespace

GaugePhase GaugePhase::negated() const {
    GaugePhase p(theta);
    p.theta *= -1.0;
    for (int i = 0; i < kMaxDim; ++i) p.windings[i] = -windings[i];
    return p;
}

Cochain phase_differential(const GaugePhase& p) {
    Cochain d = exterior_derivative(p.theta);
    const auto& g = p.theta.geometry();
    for (int i = 0; i < g.dim(); ++i) {
        if (p.windings[i] == 0) continue;
        const double jump = kTwoPi * p.windings[i] / g.spacing(i);
        auto di = d.component(i);
        for (std::size_t x = 0; x < g.site_count(); ++x)
            if (g.coords(x)[i] == g.sites(i) - 1) di[x] += jump;
    }
    return d;
}

GaugePair apply_gauge(const Section& u, const Gauge1Form& a, const GaugePhase& theta) {
    if (!(u.geometry() == a.geometry()) || !(theta.theta.geometry() == a.geometry()))
        throw ShapeMismatch("apply_gauge: geometry mismatch");
    GaugePair out{u, a};
    const auto t = theta.theta.component(0);
    for (std::size_t x = 0; x < u.size(); ++x) out.section[x] = u[x] * std::polar(1.0, t[x]);
    out.gauge += phase_differential(theta);
    return out;
}

CoulombGauge coulomb_fix(const Section& u, const Gauge1Form& a) {
    const auto& g = a.geometry();
    const HodgeParts parts = hodge_decompose(a);

    GaugePhase phase(parts.exact_potential);
    phase.theta *= -1.0;

    // Large gauge theta = -2 pi m_i x_i / L_i lowers the harmonic component by 2 pi m_i / L_i.
    for (int i = 0; i < g.dim(); ++i) {
        const double xi = parts.harmonic.at(i, 0);
        const long m = round_ties_to_zero(xi * g.length(i) / kTwoPi);
        if (m == 0) continue;
        phase.windings[i] = static_cast<int>(-m);
        auto t = phase.theta.component(0);
        for (std::size_t x = 0; x < g.site_count(); ++x)
            t[x] -= kTwoPi * static_cast<double>(m) * g.coords(x)[i] / g.sites(i);
    }

    GaugePair fixed = apply_gauge(u, a, phase);
    return {std::move(fixed.section), std::move(fixed.gauge), std::move(phase)};
}

}  // namespace ymh
