#include "ymh/selftest.hpp"

#include <omp.h>

#include <cmath>
#include <ostream>
#include <sstream>

#include "ymh/config.hpp"
#include "ymh/hodge.hpp"
#include "ymh/io.hpp"
#include "ymh/random_fields.hpp"
#include "ymh/solve.hpp"

namespace ymh {

bool SelftestReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::vector<SelftestCheck> SelftestReport::failures() const {
    std::vector<SelftestCheck> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c);
    return out;
}

namespace {

struct Suite {
    SelftestReport report;
    std::ostream* log;

    void check(const std::string& module, const std::string& invariant, double measured, double limit) {
        const bool ok = measured <= limit;  // NaN fails
        report.checks.push_back({module, invariant, measured, limit, ok});
        if (log)
            *log << (ok ? "ok   " : "FAIL ") << module << ": " << invariant << " = " << io::format_double(measured)
                 << " (limit " << io::format_double(limit) << ")\n";
    }
};

double max_diff(const Cochain& a, const Cochain& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

BundleData flux_bundle(const TorusGeometry& g) {
    ChernMatrix c(g.dim());
    c.set(0, 1, 1);
    if (g.dim() == 3) c.set(1, 2, -2);
    return build_background(g, c);
}

std::vector<TorusGeometry> small_geometries() {
    return {TorusGeometry({8, 6}, {1.0, 1.3}), TorusGeometry({4, 5, 6}, {1.0, 1.1, 0.9})};
}

void lattice_checks(Suite& s, FieldSampler& rng, const SelftestOptions& opts) {
    auto codiff = [&](const Cochain& c) { return opts.codifferential ? opts.codifferential(c) : codifferential(c); };
    for (const auto& g : small_geometries()) {
        const int n = g.dim();
        const std::string tag = " (n=" + std::to_string(n) + ")";
        double dd = 0.0;
        double ss = 0.0;
        double adj = 0.0;
        double comm = 0.0;
        for (int k = 0; k <= n; ++k) {
            for (int t = 0; t < 5; ++t) {
                if (k + 2 <= n) dd = std::max(dd, exterior_derivative(exterior_derivative(rng.cochain(g, k))).max_abs());
                if (k >= 2) ss = std::max(ss, codiff(codiff(rng.cochain(g, k))).max_abs());
                if (k < n) {
                    const Cochain a = rng.cochain(g, k);
                    const Cochain b = rng.cochain(g, k + 1);
                    const double lhs = inner_product(exterior_derivative(a), b);
                    const double rhs = inner_product(a, codiff(b));
                    adj = std::max(adj, std::abs(lhs - rhs) / std::max(1e-300, std::abs(lhs) + std::abs(rhs)));
                    const Cochain ld = laplacian(exterior_derivative(a));
                    const Cochain dl = exterior_derivative(laplacian(a));
                    comm = std::max(comm, max_diff(ld, dl) / std::max(1e-300, ld.max_abs()));
                    const Cochain ls = laplacian(codiff(b));
                    const Cochain sl = codiff(laplacian(b));
                    comm = std::max(comm, max_diff(ls, sl) / std::max(1e-300, ls.max_abs()));
                }
            }
        }
        s.check("lattice", "d o d = 0" + tag, dd, 1e-10);
        s.check("lattice", "d* o d* = 0" + tag, ss, 1e-10);
        s.check("lattice", "adjointness <da,b> = <a,d*b>" + tag, adj, 1e-12);
        s.check("lattice", "-Delta commutes with d and d*" + tag, comm, 1e-10);
        double kernel_err = 0.0;
        for (int k = 0; k <= n; ++k) {
            int zeros = 0;
            for (double lam : laplacian_spectrum(g, k)) zeros += lam < 1e-10 ? 1 : 0;
            kernel_err += std::abs(zeros - binomial(n, k));
        }
        s.check("lattice", "dim ker(-Delta) = C(n,k)" + tag, kernel_err, 0.0);
    }
}

void bundle_checks(Suite& s, FieldSampler& rng) {
    for (const auto& g : small_geometries()) {
        const std::string tag = " (n=" + std::to_string(g.dim()) + ")";
        const BundleData b = flux_bundle(g);
        s.check("bundle", "holonomy matches flux" + tag, holonomy_residue(b), 1e-12);
        double pairing = 0.0;
        for (int t = 0; t < 5; ++t) {
            const Cochain f = curvature(rng.gauge(g), b);
            for (int i = 0; i < g.dim(); ++i)
                for (int j = i + 1; j < g.dim(); ++j)
                    for (double p : chern_slice_pairings(f, i, j)) pairing = std::max(pairing, std::abs(p - b.chern(i, j)));
        }
        s.check("bundle", "curvature pairing = chern" + tag, pairing, 1e-9);
        const Section u = rng.section(g);
        const Gauge1Form a = rng.gauge(g);
        const GaugePair t = apply_gauge(u, a, rng.phase(g));
        const EdgeField d0 = covariant_difference(u, a, b);
        const EdgeField d1 = covariant_difference(t.section, t.gauge, b);
        double cov = 0.0;
        for (std::size_t e = 0; e < d0.values.size(); ++e)
            cov = std::max(cov, std::abs(std::abs(d0.values[e]) - std::abs(d1.values[e])) / (1.0 + std::abs(d0.values[e])));
        s.check("bundle", "gauge covariance of D_A u" + tag, cov, 1e-12);
    }
}

void fields_checks(Suite& s, FieldSampler& rng) {
    for (const auto& g : small_geometries()) {
        const std::string tag = " (n=" + std::to_string(g.dim()) + ")";
        const BundleData b = flux_bundle(g);
        const double eps = 0.3;
        double inv = 0.0;
        int trunc = 0;
        double pot = 0.0;
        for (int t = 0; t < 10; ++t) {
            const Section u = rng.section(g);
            const Gauge1Form a = rng.gauge(g);
            const GaugePair p = apply_gauge(u, a, rng.phase(g));
            const double e0 = g_energy(u, a, b, eps).total;
            inv = std::max(inv, std::abs(e0 - g_energy(p.section, p.gauge, b, eps).total) / e0);
            trunc += g_energy(truncate(u), a, b, eps).total <= e0 ? 0 : 1;
            pot = std::max(pot, std::abs(g_energy(u, a, b, eps / 2).potential - 4.0 * g_energy(u, a, b, eps).potential));
        }
        s.check("fields", "gauge invariance of G" + tag, inv, 1e-10);
        s.check("fields", "G(truncate(u)) <= G(u) violations" + tag, trunc, 0.0);
        s.check("fields", "potential(eps/2) = 4 potential(eps)" + tag, pot, 0.0);

        const Section u = rng.section(g);
        const Gauge1Form a = rng.gauge(g);
        const GradientField grad = g_gradient(u, a, b, eps);
        const double step = 1e-5;
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            const std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.size()) - 1));
            Gauge1Form ap = a;
            Gauge1Form am = a;
            ap.values()[e] += step;
            am.values()[e] -= step;
            const double fd = (g_energy(u, ap, b, eps).total - g_energy(u, am, b, eps).total) / (2 * step);
            worst = std::max(worst, std::abs(fd - grad.gauge.values()[e]) / std::max(1e-6, std::abs(fd)));
            const std::size_t x = static_cast<std::size_t>(rng.integer(0, static_cast<int>(u.size()) - 1));
            for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
                Section up = u;
                Section um = u;
                up[x] += step * dir;
                um[x] -= step * dir;
                const double fdu = (g_energy(up, a, b, eps).total - g_energy(um, a, b, eps).total) / (2 * step);
                const double an = dir.real() != 0.0 ? grad.section[x].real() : grad.section[x].imag();
                worst = std::max(worst, std::abs(fdu - an) / std::max(1e-6, std::abs(fdu)));
            }
        }
        s.check("fields", "gradient vs central differences" + tag, worst, 1e-6);
    }
}

void vortex_and_gauge_checks(Suite& s, FieldSampler& rng) {
    for (const auto& g : small_geometries()) {
        const std::string tag = " (n=" + std::to_string(g.dim()) + ")";
        const BundleData b = flux_bundle(g);
        double obs = 0.0;
        int winding_changes = 0;
        int pairing_errors = 0;
        double coulomb = 0.0;
        for (int t = 0; t < 5; ++t) {
            const Section u = rng.near_unit_section(g);
            const Gauge1Form a = rng.gauge(g);
            const GaugePair p = apply_gauge(u, a, rng.phase(g));
            obs = std::max(obs, max_diff(supercurrent(u, a, b), supercurrent(p.section, p.gauge, b)));
            obs = std::max(obs, max_diff(jacobian(u, a, b), jacobian(p.section, p.gauge, b)));
            obs = std::max(obs, max_diff(curvature(a, b), curvature(p.gauge, b)));
            const VorticityField v0 = vorticity(u, a, b);
            const VorticityField v1 = vorticity(p.section, p.gauge, b);
            winding_changes += v0.windings == v1.windings ? 0 : 1;
            pairing_errors += matches_chern(v0, b.chern) ? 0 : 1;

            const CoulombGauge once = coulomb_fix(u, a);
            const CoulombGauge twice = coulomb_fix(once.section, once.gauge);
            coulomb = std::max(coulomb, max_diff(once.gauge, twice.gauge));
        }
        s.check("vortex", "gauge invariance of j, J, F" + tag, obs, 1e-10);
        s.check("vortex", "vorticity changes under gauge" + tag, winding_changes, 0.0);
        s.check("vortex", "vorticity slice sums != chern" + tag, pairing_errors, 0.0);
        s.check("gauge", "coulomb_fix idempotent" + tag, coulomb, 1e-9);
    }
}

void hodge_checks(Suite& s, FieldSampler& rng) {
    for (const auto& g : small_geometries()) {
        const int n = g.dim();
        const std::string tag = " (n=" + std::to_string(n) + ")";
        double recon = 0.0;
        double orth = 0.0;
        double lin = 0.0;
        double solve = 0.0;
        for (int k = 0; k <= n; ++k) {
            for (int t = 0; t < 10; ++t) {
                const Cochain w = rng.cochain(g, k);
                const HodgeParts p = hodge_decompose(w);
                Cochain exact(g, k);
                Cochain coexact(g, k);
                if (k > 0) exact = exterior_derivative(p.exact_potential);
                if (k < n) coexact = codifferential(p.coexact_potential);
                const Cochain sum = exact + coexact + p.harmonic;
                const double scale = std::max(1.0, w.max_abs());
                recon = std::max(recon, max_diff(sum, w) / scale);
                const double ww = inner_product(w, w);
                orth = std::max({orth, std::abs(inner_product(exact, coexact)) / ww,
                                 std::abs(inner_product(exact, p.harmonic)) / ww,
                                 std::abs(inner_product(coexact, p.harmonic)) / ww});

                const Cochain w2 = rng.cochain(g, k);
                const double al = rng.normal();
                const double be = rng.normal();
                const Cochain comb = al * w + be * w2;
                lin = std::max(lin, max_diff(green(comb), al * green(w) + be * green(w2)) / scale);
                lin = std::max(lin, max_diff(solve_london(comb), al * solve_london(w) + be * solve_london(w2)) / scale);
                const Cochain f = w - harmonic_projection(w);
                const Cochain f2 = w2 - harmonic_projection(w2);
                lin = std::max(lin, max_diff(solve_poisson(al * f + be * f2), al * solve_poisson(f) + be * solve_poisson(f2)) / scale);

                const Cochain v = solve_london(w);
                solve = std::max(solve, max_diff(laplacian(v) + v, w) / scale);
                const Cochain q = solve_poisson(f);
                solve = std::max(solve, max_diff(laplacian(q), f) / scale);
            }
        }
        s.check("hodge", "reconstruction d phi + d* psi + xi = w" + tag, recon, 1e-10);
        s.check("hodge", "pairwise orthogonality" + tag, orth, 1e-10);
        s.check("hodge", "linearity of green/london/poisson" + tag, lin, 1e-10);
        s.check("hodge", "solver residuals" + tag, solve, 1e-10);
        double harm = 0.0;
        for (int k = 0; k <= n; ++k) {
            int zeros = 0;
            for (double lam : laplacian_spectrum(g, k)) zeros += lam < 1e-10 ? 1 : 0;
            harm += std::abs(zeros - binomial(n, k));
        }
        s.check("hodge", "dim Harm^k = C(n,k)" + tag, harm, 0.0);
    }
}

void solve_checks(Suite& s) {
    const TorusGeometry g({12, 12}, {1.0, 1.0});
    ChernMatrix c(2);
    c.set(0, 1, 1);
    const BundleData b = build_background(g, c);
    const double eps = 0.2;
    const AnsatzField an = vortex_ansatz(*default_ansatz(g, c), b, eps);

    MinimizerOptions o;
    o.record_every = 1;
    o.truncate_each = true;
    std::vector<double> energies;
    o.on_record = [&](const IterationRecord& r) { energies.push_back(r.energy.total); };
    const MinimizerResult r = minimize(an.section, an.gauge, b, eps, o);
    int increases = 0;
    for (std::size_t k = 1; k < energies.size(); ++k) increases += energies[k] > energies[k - 1] ? 1 : 0;
    s.check("solve", "stored energy increases along descent", increases, 0.0);
    s.check("solve", "minimizer converged (1 = no)", r.converged ? 0.0 : 1.0, 0.0);
    s.check("solve", "grad_norm at minimizer", r.grad_norm, o.grad_tolerance);
    s.check("solve", "|d*F - j| at minimizer", r.el_residual, 100 * o.grad_tolerance);
    s.check("solve", "london residual at minimizer", r.london_residual, 100 * o.grad_tolerance);
    const VorticityField v = vorticity(r.section, r.gauge_field, b);
    s.check("solve", "vorticity slice sums != chern at minimizer", matches_chern(v, c) ? 0.0 : 1.0, 0.0);
    int over = 0;
    for (const auto& z : r.section.values()) over += std::abs(z) > 1.0 ? 1 : 0;
    s.check("solve", "|u| > 1 after truncate_each", over, 0.0);

    const int threads = omp_get_max_threads();
    MinimizerOptions plain;
    plain.max_iterations = 40;
    omp_set_num_threads(1);
    const MinimizerResult one = minimize(an.section, an.gauge, b, eps, plain);
    omp_set_num_threads(3);
    const MinimizerResult three = minimize(an.section, an.gauge, b, eps, plain);
    omp_set_num_threads(threads);
    double diff = std::abs(one.energy.total - three.energy.total);
    for (std::size_t x = 0; x < g.site_count(); ++x) diff = std::max(diff, std::abs(one.section[x] - three.section[x]));
    s.check("solve", "thread-count dependence of iterates", diff, 0.0);
}

void cli_checks(Suite& s) {
    RunConfig c;
    c.sites = {16, 16};
    c.lengths = {1.0, 1.25};
    c.chern = {{0, 1}, {-1, 0}};
    c.epsilons = {0.2, 0.1};
    c.seed = 7;
    c.tolerance = 1e-9;
    c.ansatz = AnsatzSpec{2, {{{0.3, 0.7}, 1}}, "linear"};
    const RunConfig back = parse_config(serialize_config(c));
    s.check("cli", "config round-trip mismatch", back == c ? 0.0 : 1.0, 0.0);
    int bad = 0;
    for (double v : {0.1, 1.0 / 3.0, 2.718281828459045, 6.02214076e23, -1.6e-19}) {
        bad += std::stod(io::format_double(v)) == v ? 0 : 1;
    }
    s.check("cli", "17-digit output does not round-trip", bad, 0.0);
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& opts) {
    Suite s{{}, opts.log};
    FieldSampler rng(opts.seed);
    lattice_checks(s, rng, opts);
    bundle_checks(s, rng);
    fields_checks(s, rng);
    vortex_and_gauge_checks(s, rng);
    hodge_checks(s, rng);
    solve_checks(s);
    cli_checks(s);
    return s.report;
}

}  // namespace ymh
