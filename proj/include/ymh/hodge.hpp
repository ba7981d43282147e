#pragma once

// Hodge theory on periodic cochains. On the flat torus -Delta acts
// componentwise as the scalar stencil Laplacian, so every operator here is
// diagonal in the discrete Fourier basis; harmonic forms are the
// constant-component cochains.

#include "ymh/lattice.hpp"

namespace ymh {

struct HodgeParts {
    Cochain exact_potential;    // phi, degree k-1
    Cochain coexact_potential;  // psi, degree k+1
    Cochain harmonic;           // xi, degree k
};

enum class SolverMethod { spectral, iterative };

// Per-component mean value.
Cochain harmonic_projection(const Cochain& w);

// Green's operator: the solution of Delta G(w) = w - H(w) orthogonal to
// harmonic forms (Delta = -(d d* + d* d)).
Cochain green(const Cochain& w);

// w = d(phi) + d*(psi) + xi with phi = -d* G(w), psi = -d G(w), xi = H(w).
// Degree 0 and n cochains get empty potentials of the out-of-range degree.
HodgeParts hodge_decompose(const Cochain& w);

// (-Delta + 1) v = f.
Cochain solve_london(const Cochain& f, SolverMethod method = SolverMethod::spectral);

// -Delta v = f with H(v) = 0; requires H(f) = 0 (NonCompatibleSource otherwise).
Cochain solve_poisson(const Cochain& f, SolverMethod method = SolverMethod::spectral);

// Multiplies every component of w by symbol(lambda_k) in Fourier space, where
// lambda_k is the stencil eigenvalue of mode k.
template <class Symbol>
Cochain apply_spectral_symbol(const Cochain& w, Symbol&& symbol);

namespace detail {
Cochain apply_symbol_table(const Cochain& w, const std::vector<double>& multipliers);
std::vector<double> half_spectrum_eigenvalues(const TorusGeometry& g);
}  // namespace detail

template <class Symbol>
Cochain apply_spectral_symbol(const Cochain& w, Symbol&& symbol) {
    std::vector<double> m = detail::half_spectrum_eigenvalues(w.geometry());
    for (double& v : m) v = symbol(v);
    return detail::apply_symbol_table(w, m);
}

}  // namespace ymh
