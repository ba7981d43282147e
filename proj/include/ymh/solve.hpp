#pragma once

// Energy minimization, connection relaxation, the optimised pair, the vortex
// ansatz and epsilon continuation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ymh/fields.hpp"
#include "ymh/vortex.hpp"

namespace ymh {

struct IterationRecord {
    int iteration;
    EnergyBreakdown energy;
    double grad_norm;
};

struct MinimizerOptions {
    double grad_tolerance = 1e-8;
    int max_iterations = 200000;
    double armijo = 1e-4;
    double shrink = 0.5;
    int restart_every = 50;
    int max_backtracks = 60;
    bool truncate_each = false;
    // Search along (-Delta + 1/eps^2)^-1 and (-Delta + 1)^-1 of the u and A gradients.
    bool precondition = true;
    // Iteration callback cadence; 0 disables the callback.
    int record_every = 0;
    std::function<void(const IterationRecord&)> on_record;
};

struct MinimizerResult {
    Section section;
    Gauge1Form gauge_field;
    EnergyBreakdown energy;
    double grad_norm = 0.0;        // sup-norm of the L2 gradient (raw gradient / cell volume)
    double london_residual = 0.0;  // |-Delta F + F - 2J| / (1 + |F|)
    double el_residual = 0.0;      // |d*F - j|, the A-part of the L2 gradient
    int iterations = 0;
    bool converged = false;
};

// Sup-norm of the L2 gradient (raw partial derivatives divided by the cell volume).
double gradient_sup_norm(const GradientField& grad, const TorusGeometry& g);
double london_residual(const Section& u, const Gauge1Form& a, const BundleData& b);

MinimizerResult minimize(Section u0, Gauge1Form a0, const BundleData& b, double eps, const MinimizerOptions& opts = {});

struct RelaxOptions {
    double tolerance = 1e-8;
    int max_iterations = 5000;
    double armijo = 1e-4;
    double shrink = 0.5;
    int restart_every = 50;
};

struct RelaxResult {
    Gauge1Form connection;
    double functional = 0.0;  // F(B; u) = int |D_B u|^2 + |F_B|^2
    double residual = 0.0;    // |d(d*F_B - j(u, B))|
    int iterations = 0;
    bool converged = false;
};

// int |D_B u|^2 + |F_B|^2.
double connection_functional(const Section& u, const Gauge1Form& a, const BundleData& b);

// Minimizes the connection functional over B = A + d*psi with psi exact.
RelaxResult relax_connection(const Section& u, const Gauge1Form& a, const BundleData& b, const RelaxOptions& opts = {});

struct OptimisedPair {
    Section section;
    Gauge1Form gauge;
    RelaxResult relax;
};

OptimisedPair optimised_pair(const Section& u, const Gauge1Form& a, const BundleData& b, double eps,
                             const RelaxOptions& opts = {});

struct VortexSite {
    std::vector<double> position;  // physical coordinates in the transverse plane (full point for n = 2)
    int winding = 1;
};

struct AnsatzSpec {
    int axis = 2;  // direction of the vortex lines for n = 3; ignored for n = 2
    std::vector<VortexSite> vortices;
    std::string core_profile = "linear";  // f(r) = min(r, 1)
};

struct AnsatzField {
    Section section;
    Gauge1Form gauge;
    VorticityField prescribed;  // plaquette windings the ansatz is built around
};

// u = f(dist / eps) exp(i Phi) with the gauge-invariant phase gradient solving
// d a = -F0 + 2 pi (prescribed vortex density); A = 0.
AnsatzField vortex_ansatz(const AnsatzSpec& spec, const BundleData& b, double eps);

struct SweepOptions {
    MinimizerOptions minimizer;
    // Sites per axis chosen as ceil(L_i / (eps / sites_per_epsilon)) per entry;
    // 0 keeps the bundle's geometry for every entry.
    double sites_per_epsilon = 0.0;
    std::uint64_t seed = 1;
};

struct SweepRecord {
    double epsilon;
    std::vector<int> sites;
    MinimizerResult result;
    double g_over_log_eps;
    double mass;
    long chern_pairing;
    double hminus1_to_target;
};

// Straight vortex through the center of the torus carrying the single nonzero
// Chern number; nullopt for the trivial bundle. Throws InvalidArgument when
// more than one plane carries flux.
std::optional<AnsatzSpec> default_ansatz(const TorusGeometry& g, const ChernMatrix& chern);

// Initialization when no ansatz is given: u = 1 + 0.1 * noise (seeded), A = 0.
Section perturbed_ground_state(const TorusGeometry& g, std::uint64_t seed, double amplitude = 0.1);

std::vector<SweepRecord> epsilon_sweep(const std::optional<AnsatzSpec>& spec, const TorusGeometry& geom,
                                       const ChernMatrix& chern, const std::vector<double>& epsilons,
                                       const SweepOptions& opts);

}  // namespace ymh
