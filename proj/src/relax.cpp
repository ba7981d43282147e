#include <cmath>

#include "ymh/hodge.hpp"
#include "ymh/solve.hpp"

namespace ymh {

namespace {

// Kinetic plus curvature part of G; the connection functional is twice this.
long double half_functional(const Section& u, const Cochain& a, const BundleData& b) {
    const auto s = detail::energy_sums(u, a, b, 1.0);
    return s.kinetic + s.curvature;
}

// Change of the half functional between two connections, free of cancellation.
long double half_change(const Section& u, const Cochain& from, const Cochain& to, const BundleData& b) {
    const auto s = detail::energy_change(u, from, u, to, b, 1.0);
    return s.kinetic + s.curvature;
}

Cochain coexact_part(const Cochain& w) {
    const HodgeParts parts = hodge_decompose(w);
    return codifferential(parts.coexact_potential);
}

// L2 gradient of the connection functional with respect to B: 2 (d*F_B - j(u, B)).
Cochain functional_gradient(const Section& u, const Cochain& a, const BundleData& b) {
    Section du(b.geometry);
    Cochain da(b.geometry, 1);
    detail::gradient_into(u, a, b, 1.0, du, da);
    da *= 2.0 / b.geometry.cell_volume();
    return da;
}

double stationarity(const Cochain& grad) {
    Cochain d = exterior_derivative(grad);
    d *= 0.5;
    return l2_norm(d);
}

}  // namespace

double connection_functional(const Section& u, const Gauge1Form& a, const BundleData& b) {
    return static_cast<double>(2.0L * half_functional(u, a, b));
}

RelaxResult relax_connection(const Section& u, const Gauge1Form& a, const BundleData& b, const RelaxOptions& opts) {
    require_compatible(u, a, b);
    const auto& g = b.geometry;

    Cochain beta(g, 1);  // B - A, kept coexact
    Cochain current = a;
    long double value = half_functional(u, current, b);
    Cochain grad = functional_gradient(u, current, b);
    double residual = stationarity(grad);

    // Search directions are coexact and preconditioned by (-Delta + 1)^-1.
    Cochain pgrad = coexact_part(solve_london(grad));
    Cochain pgrad_old = pgrad;
    Cochain grad_old = grad;
    Cochain dir = -1.0 * pgrad;
    double alpha_prev = 1.0;
    long double slope_prev = 0.0L;
    bool fresh = true;
    int since_restart = 0;
    int it = 0;
    bool converged = residual <= opts.tolerance;

    while (!converged && it < opts.max_iterations) {
        // Directional derivative of F/2 along dir: <grad, dir> / 2.
        long double slope = 0.5L * inner_product(grad, dir);
        if (!(slope < 0.0L)) {
            dir = -1.0 * pgrad;
            slope = 0.5L * inner_product(grad, dir);
            fresh = true;
            if (!(slope < 0.0L)) break;
        }
        double alpha = fresh || slope_prev == 0.0L ? 1.0 : static_cast<double>(alpha_prev * (slope_prev / slope));
        if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = 1.0;

        bool accepted = false;
        Cochain trial_beta;
        Cochain trial;
        long double trial_delta = 0.0L;
        for (int bt = 0; bt < 60; ++bt) {
            trial_beta = beta;
            trial_beta.axpy(alpha, dir);
            trial = a + trial_beta;
            trial_delta = half_change(u, current, trial, b);
            if (bt == 0) {
                const long double curv = trial_delta - slope * alpha;
                if (curv > 0.0L) {
                    const double alpha_q = static_cast<double>(-slope * alpha * alpha / (2.0L * curv));
                    if (alpha_q > 0.05 * alpha && alpha_q < 20.0 * alpha) {
                        Cochain qb = beta;
                        qb.axpy(alpha_q, dir);
                        Cochain qt = a + qb;
                        const long double qd = half_change(u, current, qt, b);
                        if (qd < trial_delta) {
                            trial_beta = std::move(qb);
                            trial = std::move(qt);
                            trial_delta = qd;
                            alpha = alpha_q;
                        }
                    }
                }
            }
            if (trial_delta <= opts.armijo * alpha * slope && trial_delta < 0.0L) {
                accepted = true;
                break;
            }
            alpha *= opts.shrink;
        }
        if (!accepted) {
            if (!fresh) {
                dir = -1.0 * pgrad;
                fresh = true;
                continue;
            }
            break;
        }

        // Keep B - A in the coexact class; the projected iterate must still descend.
        Cochain projected_beta = coexact_part(trial_beta);
        Cochain projected = a + projected_beta;
        const long double projected_delta = half_change(u, current, projected, b);
        if (projected_delta < 0.0L) {
            beta = std::move(projected_beta);
            current = std::move(projected);
            value += projected_delta;
        } else {
            beta = std::move(trial_beta);
            current = std::move(trial);
            value += trial_delta;
        }
        ++it;
        alpha_prev = alpha;
        slope_prev = slope;

        grad_old = grad;
        pgrad_old = pgrad;
        grad = functional_gradient(u, current, b);
        residual = stationarity(grad);
        converged = residual <= opts.tolerance;
        if (converged) break;
        pgrad = coexact_part(solve_london(grad));

        ++since_restart;
        double bcoef = 0.0;
        if (since_restart < opts.restart_every) {
            const double num = inner_product(grad, pgrad) - inner_product(grad_old, pgrad);
            const double den = inner_product(grad_old, pgrad_old);
            bcoef = den > 0.0 ? std::max(0.0, num / den) : 0.0;
        } else {
            since_restart = 0;
        }
        fresh = bcoef == 0.0;
        dir *= bcoef;
        dir -= pgrad;
    }

    RelaxResult r;
    r.connection = Gauge1Form(std::move(current));
    r.functional = static_cast<double>(2.0L * value);
    r.residual = residual;
    r.iterations = it;
    r.converged = converged;
    return r;
}

OptimisedPair optimised_pair(const Section& u, const Gauge1Form& a, const BundleData& b, double eps,
                             const RelaxOptions& opts) {
    detail::require_epsilon(eps);
    Section v = truncate(u);
    RelaxResult relaxed = relax_connection(v, a, b, opts);
    Gauge1Form bfield = relaxed.connection;
    return {std::move(v), std::move(bfield), std::move(relaxed)};
}

}  // namespace ymh
