#pragma once

// Seeded random fields for property tests and benchmarks.

#include <random>

#include "ymh/gauge.hpp"

namespace ymh {

class FieldSampler {
public:
    explicit FieldSampler(std::uint64_t seed) : rng_(seed) {}

    double normal() { return normal_(rng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

    Cochain cochain(const TorusGeometry& g, int degree, double scale = 1.0) {
        Cochain c(g, degree);
        for (double& v : c.values()) v = scale * normal();
        return c;
    }
    Gauge1Form gauge(const TorusGeometry& g, double scale = 1.0) { return Gauge1Form(cochain(g, 1, scale)); }
    Section section(const TorusGeometry& g, double scale = 1.0) {
        Section u(g);
        for (auto& z : u.values()) z = {scale * normal(), scale * normal()};
        return u;
    }
    // Unit-modulus section perturbed radially, bounded away from zero.
    Section near_unit_section(const TorusGeometry& g, double spread = 0.3) {
        Section u(g);
        for (auto& z : u.values()) z = std::polar(1.0 + spread * uniform(-1.0, 1.0), uniform(-3.14159, 3.14159));
        return u;
    }
    GaugePhase phase(const TorusGeometry& g, double scale = 3.0, int max_winding = 2) {
        GaugePhase p(cochain(g, 0, scale));
        for (int i = 0; i < g.dim(); ++i) p.windings[i] = integer(-max_winding, max_winding);
        return p;
    }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

}  // namespace ymh
