#pragma once

// Serial reference kernels. They are written directly from the stencil
// formulas with explicit coordinate loops and plain summation, and exist to
// cross-check the parallel kernels and for benchmarking.

#include "ymh/fields.hpp"

namespace ymh::reference {

Cochain exterior_derivative(const Cochain& c);
Cochain codifferential(const Cochain& c);
EnergyBreakdown g_energy(const Section& u, const Gauge1Form& a, const BundleData& b, double eps);
GradientField g_gradient(const Section& u, const Gauge1Form& a, const BundleData& b, double eps);

}  // namespace ymh::reference
