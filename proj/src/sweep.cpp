#include <cmath>
#include <numbers>

#include "ymh/solve.hpp"

namespace ymh {

std::optional<AnsatzSpec> default_ansatz(const TorusGeometry& g, const ChernMatrix& chern) {
    const int n = g.dim();
    int planes = 0;
    int pi = 0;
    int pj = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (chern(i, j) != 0) {
                ++planes;
                pi = i;
                pj = j;
            }
    if (planes == 0) return std::nullopt;
    if (planes > 1) throw InvalidArgument("default ansatz needs flux through a single coordinate plane");
    AnsatzSpec spec;
    spec.axis = n == 3 ? transverse_axis(pi, pj) : 2;
    spec.vortices.push_back({{0.5 * g.length(pi), 0.5 * g.length(pj)}, chern(pi, pj)});
    return spec;
}

std::vector<SweepRecord> epsilon_sweep(const std::optional<AnsatzSpec>& spec, const TorusGeometry& geom,
                                       const ChernMatrix& chern, const std::vector<double>& epsilons,
                                       const SweepOptions& opts) {
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        if (!(epsilons[k] > 0.0 && epsilons[k] < 1.0)) throw InvalidArgument("sweep: every epsilon must lie in (0, 1)");
        if (k > 0 && !(epsilons[k] < epsilons[k - 1])) throw InvalidArgument("sweep: epsilons must be strictly decreasing");
    }
    const std::optional<AnsatzSpec> init = spec ? spec : default_ansatz(geom, chern);

    std::vector<SweepRecord> out;
    std::optional<MinimizerResult> previous;
    TorusGeometry previous_geom;
    for (double eps : epsilons) {
        TorusGeometry g = geom;
        if (opts.sites_per_epsilon > 0.0) {
            std::vector<int> sites;
            for (int i = 0; i < geom.dim(); ++i) {
                const double want = geom.length(i) * opts.sites_per_epsilon / eps;
                sites.push_back(static_cast<int>(std::ceil(want - 1e-9)));
            }
            g = TorusGeometry(sites, geom.length_vector());
        }
        for (int i = 0; i < g.dim(); ++i)
            if (g.spacing(i) > 0.5 * eps * (1.0 + 1e-12))
                throw InvalidArgument("sweep: lattice spacing must satisfy h <= epsilon / 2");

        const BundleData b = build_background(g, chern);
        Section u0;
        Gauge1Form a0;
        std::optional<AnsatzField> ansatz;
        if (init) ansatz = vortex_ansatz(*init, b, eps);
        const bool warm = previous && previous_geom == g;
        if (warm && (!ansatz || g_energy(previous->section, previous->gauge_field, b, eps).total <=
                                    g_energy(ansatz->section, ansatz->gauge, b, eps).total)) {
            u0 = previous->section;
            a0 = previous->gauge_field;
        } else if (ansatz) {
            u0 = ansatz->section;
            a0 = ansatz->gauge;
        } else {
            u0 = perturbed_ground_state(g, opts.seed);
            a0 = Gauge1Form(g);
        }

        SweepRecord rec{eps, g.site_vector(), minimize(std::move(u0), std::move(a0), b, eps, opts.minimizer), 0.0, 0.0, 0, 0.0};
        rec.g_over_log_eps = rec.result.energy.total / std::abs(std::log(eps));

        int pi = 0;
        int pj = 1;
        for (int i = 0; i < g.dim(); ++i)
            for (int j = i + 1; j < g.dim(); ++j)
                if (chern(i, j) != 0) {
                    pi = i;
                    pj = j;
                }
        try {
            const VorticityField v = vorticity(rec.result.section, rec.result.gauge_field, b);
            rec.mass = vortex_mass(v);
            rec.chern_pairing = winding_slice_sums(v, pi, pj).front();
        } catch (const ZeroOnPlaquette&) {
            rec.mass = std::nan("");
            rec.chern_pairing = 0;
        }

        Cochain scaled_j = jacobian(rec.result.section, rec.result.gauge_field, b);
        scaled_j *= 1.0 / std::numbers::pi;
        const Cochain target = ansatz ? ansatz->prescribed.density() : Cochain(g, 2);
        rec.hminus1_to_target = h_minus1_distance(scaled_j, target);

        previous = rec.result;
        previous_geom = g;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace ymh
