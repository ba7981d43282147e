#include <cmath>
#include <limits>

#include "ymh/detail/reduce.hpp"
#include "ymh/hodge.hpp"
#include "ymh/solve.hpp"

namespace ymh {

namespace {

// Search state (u, A) flattened into a single real vector space.
struct Point {
    Section u;
    Cochain a;
};

long double dot(const Point& x, const Point& y) {
    const auto& xu = x.u.values();
    const auto& yu = y.u.values();
    const auto& xa = x.a.values();
    const auto& ya = y.a.values();
    const long double su = detail::blocked_sum(xu.size(), [&](std::size_t i) {
        return static_cast<long double>(xu[i].real()) * yu[i].real() + static_cast<long double>(xu[i].imag()) * yu[i].imag();
    });
    const long double sa = detail::blocked_sum(xa.size(), [&](std::size_t i) { return static_cast<long double>(xa[i]) * ya[i]; });
    return su + sa;
}

// out = x + s * d
void step_into(const Point& x, double s, const Point& d, Point& out) {
    auto& ou = out.u.values();
    const auto& xu = x.u.values();
    const auto& du = d.u.values();
    const auto nu = static_cast<std::ptrdiff_t>(ou.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nu; ++i) ou[i] = xu[i] + s * du[i];
    auto& oa = out.a.values();
    const auto& xa = x.a.values();
    const auto& da = d.a.values();
    const auto na = static_cast<std::ptrdiff_t>(oa.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < na; ++i) oa[i] = xa[i] + s * da[i];
}

double sup_norm(const Point& p) {
    double m = 0.0;
    for (const auto& z : p.u.values()) m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
    for (double v : p.a.values()) m = std::max(m, std::abs(v));
    return m;
}

void scale_into(const Point& g, double s, Point& out) {
    for (std::size_t i = 0; i < g.u.size(); ++i) out.u[i] = s * g.u[i];
    for (std::size_t i = 0; i < g.a.size(); ++i) out.a.values()[i] = s * g.a.values()[i];
}

// Sobolev preconditioner: (-Delta + su)^-1 on both real parts of u and
// (-Delta + sa)^-1 on A, applied in Fourier space.
void precondition_into(const Point& r, double su, double sa, Point& out) {
    const auto& g = r.u.geometry();
    Cochain re(g, 0);
    Cochain im(g, 0);
    for (std::size_t x = 0; x < r.u.size(); ++x) {
        re.at(0, x) = r.u[x].real();
        im.at(0, x) = r.u[x].imag();
    }
    const auto inv_u = [su](double lam) { return 1.0 / (lam + su); };
    re = apply_spectral_symbol(re, inv_u);
    im = apply_spectral_symbol(im, inv_u);
    for (std::size_t x = 0; x < r.u.size(); ++x) out.u[x] = Complex(re.at(0, x), im.at(0, x));
    out.a = apply_spectral_symbol(r.a, [sa](double lam) { return 1.0 / (lam + sa); });
}

}  // namespace

double gradient_sup_norm(const GradientField& grad, const TorusGeometry& g) {
    double m = 0.0;
    for (const auto& z : grad.section.values()) m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
    for (double v : grad.gauge.values()) m = std::max(m, std::abs(v));
    return m / g.cell_volume();
}

double london_residual(const Section& u, const Gauge1Form& a, const BundleData& b) {
    const Cochain f = curvature(a, b);
    Cochain r = laplacian(f);
    r += f;
    r.axpy(-2.0, jacobian(u, a, b));
    return l2_norm(r) / (1.0 + l2_norm(f));
}

MinimizerResult minimize(Section u0, Gauge1Form a0, const BundleData& b, double eps, const MinimizerOptions& opts) {
    detail::require_epsilon(eps);
    require_compatible(u0, a0, b);
    const auto& g = b.geometry;
    const double dv = g.cell_volume();

    Point x{std::move(u0), std::move(a0)};
    Point trial{x.u, x.a};
    Point raw{Section(g), Cochain(g, 1)};
    Point riesz{Section(g), Cochain(g, 1)};
    Point riesz_old{Section(g), Cochain(g, 1)};
    Point pre{Section(g), Cochain(g, 1)};
    Point pre_old{Section(g), Cochain(g, 1)};
    Point dir{Section(g), Cochain(g, 1)};
    Point probe{Section(g), Cochain(g, 1)};

    auto gradient = [&](const Point& p) {
        detail::gradient_into(p.u, p.a, b, eps, raw.u, raw.a);
        scale_into(raw, 1.0 / dv, riesz);
        if (opts.precondition)
            precondition_into(riesz, 1.0 / (eps * eps), 1.0, pre);
        else
            scale_into(riesz, 1.0, pre);
    };
    auto change = [&](const Point& to) { return detail::energy_change(x.u, x.a, to.u, to.a, b, eps); };
    auto accumulate = [](detail::EnergySums& e, const detail::EnergySums& d) {
        e.kinetic += d.kinetic;
        e.potential += d.potential;
        e.curvature += d.curvature;
    };

    // Stored totals are advanced by directly computed increments, so accepted
    // steps keep them non-increasing down to the smallest resolvable change.
    detail::EnergySums e = detail::energy_sums(x.u, x.a, b, eps);
    gradient(x);
    double gnorm = sup_norm(riesz);
    scale_into(pre, -1.0, dir);

    const double initial_alpha = opts.precondition ? 1.0 : 0.1 * g.min_spacing() * g.min_spacing();
    double alpha_prev = initial_alpha;
    long double slope_prev = 0.0L;
    bool fresh_direction = true;
    int since_restart = 0;
    int it = 0;
    bool converged = gnorm <= opts.grad_tolerance;

    auto emit = [&](int iteration) {
        if (opts.record_every > 0 && opts.on_record && iteration % opts.record_every == 0)
            opts.on_record({iteration, detail::to_breakdown(e, eps), gnorm});
    };
    emit(0);

    while (!converged && it < opts.max_iterations) {
        long double slope = dot(raw, dir);
        if (!(slope < 0.0L)) {
            scale_into(pre, -1.0, dir);
            slope = dot(raw, dir);
            fresh_direction = true;
        }
        double alpha = fresh_direction || slope_prev == 0.0L
                           ? initial_alpha
                           : static_cast<double>(alpha_prev * (slope_prev / slope));
        if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = initial_alpha;

        // First probe, refined by one quadratic interpolation, then backtracking.
        bool accepted = false;
        detail::EnergySums delta;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            step_into(x, alpha, dir, trial);
            delta = change(trial);
            const long double armijo_bound = opts.armijo * alpha * slope;
            if (bt == 0) {
                const long double curv = delta.total() - slope * alpha;
                if (curv > 0.0L) {
                    const double alpha_q = static_cast<double>(-slope * alpha * alpha / (2.0L * curv));
                    if (alpha_q > 0.05 * alpha && alpha_q < 20.0 * alpha && std::abs(alpha_q - alpha) > 1e-3 * alpha) {
                        step_into(x, alpha_q, dir, probe);
                        const detail::EnergySums delta_q = change(probe);
                        const bool q_ok = delta_q.total() <= opts.armijo * alpha_q * slope && delta_q.total() < 0.0L;
                        const bool a_ok = delta.total() <= armijo_bound && delta.total() < 0.0L;
                        if (q_ok && (!a_ok || delta_q.total() < delta.total())) {
                            std::swap(trial, probe);
                            delta = delta_q;
                            alpha = alpha_q;
                            accepted = true;
                            break;
                        }
                    }
                }
            }
            if (delta.total() <= armijo_bound && delta.total() < 0.0L) {
                accepted = true;
                break;
            }
            alpha *= opts.shrink;
        }

        if (!accepted) {
            if (!fresh_direction) {
                scale_into(pre, -1.0, dir);
                fresh_direction = true;
                continue;
            }
            break;  // steepest descent cannot make progress at working precision
        }

        std::swap(x, trial);
        accumulate(e, delta);
        ++it;
        alpha_prev = alpha;
        slope_prev = slope;

        bool restart = false;
        if (opts.truncate_each) {
            bool changed = false;
            for (const auto& z : x.u.values()) changed = changed || std::abs(z) > 1.0;
            if (changed) {
                Point cut{truncate(x.u), x.a};
                accumulate(e, change(cut));
                x.u = std::move(cut.u);
                restart = true;
            }
        }

        std::swap(riesz_old, riesz);
        std::swap(pre_old, pre);
        gradient(x);
        gnorm = sup_norm(riesz);
        converged = gnorm <= opts.grad_tolerance;
        emit(it);
        if (converged) break;

        ++since_restart;
        double beta = 0.0;
        if (!restart && since_restart < opts.restart_every) {
            const long double num = dot(riesz, pre) - dot(riesz, pre_old);
            const long double den = dot(riesz_old, pre_old);
            beta = den > 0.0L ? std::max(0.0, static_cast<double>(num / den)) : 0.0;
        } else {
            since_restart = 0;
        }
        fresh_direction = beta == 0.0;
        // dir = -pre + beta * dir
        for (std::size_t i = 0; i < dir.u.size(); ++i) dir.u[i] = -pre.u[i] + beta * dir.u[i];
        auto& da = dir.a.values();
        const auto& ra = pre.a.values();
        for (std::size_t i = 0; i < da.size(); ++i) da[i] = -ra[i] + beta * da[i];
    }

    MinimizerResult r;
    r.energy = detail::to_breakdown(detail::energy_sums(x.u, x.a, b, eps), eps);
    r.grad_norm = gnorm;
    r.iterations = it;
    r.converged = converged;
    r.section = std::move(x.u);
    r.gauge_field = Gauge1Form(std::move(x.a));
    r.london_residual = london_residual(r.section, r.gauge_field, b);
    Cochain el = codifferential(curvature(r.gauge_field, b));
    el -= supercurrent(r.section, r.gauge_field, b);
    r.el_residual = l2_norm(el);
    if (opts.record_every > 0 && opts.on_record && it % opts.record_every != 0)
        opts.on_record({it, detail::to_breakdown(e, eps), gnorm});
    return r;
}

}  // namespace ymh
