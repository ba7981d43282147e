#pragma once

// Gauge-invariant observables: supercurrent, Jacobian, integer plaquette
// vorticity and its mass, plus an H^-1 distance between 2-cochains.

#include "ymh/bundle.hpp"

namespace ymh {

struct VorticityField {
    TorusGeometry geometry;
    std::vector<int> windings;  // (plane component, site), like a 2-cochain

    int at(int component, std::size_t site) const {
        return windings[static_cast<std::size_t>(component) * geometry.site_count() + site];
    }
    // Winding density n_p / (h_i h_j) as a real 2-cochain.
    Cochain density() const;
};

struct WindingTriple {
    int component;
    std::size_t site;
    int winding;
};

// j_e = Im(conj(u(x)) u(y) exp(-i(theta0_e + h A_e))) / h.
Cochain supercurrent(const Section& u, const Gauge1Form& a, const BundleData& b);

// J(u, A) = (d j + F_A) / 2.
Cochain jacobian(const Section& u, const Gauge1Form& a, const BundleData& b);

// Gauge-invariant link phase wrap(arg u(y) - arg u(x) - theta0_e - h A_e) in (-pi, pi].
Cochain link_phases(const Section& u, const Gauge1Form& a, const BundleData& b);

// Throws ZeroOnPlaquette if u vanishes on a corner of any plaquette, and
// Error if a plaquette winding fails the integrality check.
VorticityField vorticity(const Section& u, const Gauge1Form& a, const BundleData& b);

double vortex_mass(const VorticityField& v);

// Slice sums of the windings over every closed (i, j) coordinate 2-torus.
std::vector<long> winding_slice_sums(const VorticityField& v, int i, int j);
bool matches_chern(const VorticityField& v, const ChernMatrix& chern);

std::vector<WindingTriple> sparse_windings(const VorticityField& v);

// Structure of the support of a 3-d vorticity field, read as a dual 1-cycle.
struct DualLoopReport {
    bool closed = false;           // integer 2-cochain satisfies dn = 0 on every cube
    int components = 0;            // connected components of the support graph
    bool simple = false;           // every dual vertex of the support has degree 0 or 2
    std::size_t support_size = 0;  // number of plaquettes with nonzero winding
};
DualLoopReport analyse_dual_loops(const VorticityField& v);

// sqrt(<a - b, (-Delta + 1)^-1 (a - b)>).
double h_minus1_distance(const Cochain& a, const Cochain& b);

}  // namespace ymh
