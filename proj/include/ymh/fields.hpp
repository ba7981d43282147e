#pragma once

// Discrete Ginzburg-Landau energies G_eps(u, A) and E_eps(u), their exact
// gradients, truncation and the rescaled energy density.

#include "ymh/bundle.hpp"

namespace ymh {

struct EnergyBreakdown {
    double kinetic = 0.0;    // 1/2 sum |D_A u|^2 dV
    double potential = 0.0;  // sum (1 - |u|^2)^2 / (4 eps^2) dV
    double curvature = 0.0;  // 1/2 sum |F_A|^2 dV
    double total = 0.0;
    double epsilon = 0.0;
};

// Raw partial derivatives of g_energy: the u part packs dG/dRe(u) + i dG/dIm(u)
// per vertex, the A part holds dG/dA_e per edge. Both carry the cell volume.
struct GradientField {
    Section section;
    Gauge1Form gauge;
};

EnergyBreakdown g_energy(const Section& u, const Gauge1Form& a, const BundleData& b, double eps);
// Ungauged energy: kinetic with A = 0 plus potential, no curvature part.
EnergyBreakdown e_energy(const Section& u, const BundleData& b, double eps);

GradientField g_gradient(const Section& u, const Gauge1Form& a, const BundleData& b, double eps);

// v = u where |u| <= 1 and u / |u| elsewhere.
Section truncate(const Section& u);

// Per-vertex rescaled energy density: edge terms are split evenly between the
// two endpoints, plaquette terms between the four corners; divided by |log eps|.
Cochain energy_density(const Section& u, const Gauge1Form& a, const BundleData& b, double eps);

namespace detail {

struct EnergySums {
    long double kinetic = 0.0L;
    long double potential = 0.0L;
    long double curvature = 0.0L;
    long double total() const { return kinetic + potential + curvature; }
};

// Extended-precision energy accumulation used by the optimizers.
EnergySums energy_sums(const Section& u, const Cochain& a, const BundleData& b, double eps, bool with_curvature = true);

// Writes the raw gradient into preallocated outputs.
void gradient_into(const Section& u, const Cochain& a, const BundleData& b, double eps, Section& du, Cochain& da);

// Energy difference G(u1, A1) - G(u0, A0), accurate relative to the
// difference itself rather than to the totals.
EnergySums energy_change(const Section& u0, const Cochain& a0, const Section& u1, const Cochain& a1, const BundleData& b,
                         double eps, bool with_curvature = true);
EnergyBreakdown to_breakdown(const EnergySums& s, double eps);

void require_epsilon(double eps);

}  // namespace detail

}  // namespace ymh
