#pragma once

// Gauge transformations (u, A) -> (e^{i theta} u, A + d theta) and Coulomb
// gauge fixing.

#include <array>

#include "ymh/bundle.hpp"

namespace ymh {

// Vertex phase field, stored unwrapped. A phase may also wind around the
// torus: `windings[i]` is the integer w with theta(x + N_i e_i) = theta(x) + 2 pi w
// on the universal cover, which lets large gauge transformations shift the
// harmonic part of A.
struct GaugePhase {
    Cochain theta;
    std::array<int, kMaxDim> windings{0, 0, 0};

    GaugePhase() = default;
    explicit GaugePhase(Cochain t) : theta(std::move(t)) {
        if (theta.degree() != 0) throw DegreeError("GaugePhase requires a 0-cochain");
    }
    GaugePhase negated() const;
};

// Lattice derivative of the lifted phase (scaled forward differences).
Cochain phase_differential(const GaugePhase& p);

struct GaugePair {
    Section section;
    Gauge1Form gauge;
};

GaugePair apply_gauge(const Section& u, const Gauge1Form& a, const GaugePhase& theta);

struct CoulombGauge {
    Section section;
    Gauge1Form gauge;
    GaugePhase phase;
};

// Removes the exact part of A and reduces every harmonic component into
// [-pi/L_i, pi/L_i] by integer large gauge transformations.
CoulombGauge coulomb_fix(const Section& u, const Gauge1Form& a);

}  // namespace ymh
