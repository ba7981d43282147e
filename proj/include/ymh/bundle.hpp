#pragma once

// Hermitian line bundle over the torus: Chern integers, the background link
// phases theta0 realising a constant reference curvature F0, and the fields
// (u, A) living on it.

#include <array>
#include <complex>
#include <vector>

#include "ymh/lattice.hpp"

namespace ymh {

using Complex = std::complex<double>;

class ChernMatrix {
public:
    ChernMatrix() = default;
    explicit ChernMatrix(int dim);
    // Validates that the square matrix is antisymmetric with integer entries.
    static ChernMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return dim_; }
    int operator()(int i, int j) const { return c_[i][j]; }
    void set(int i, int j, int value);
    bool trivial() const;
    std::vector<std::vector<int>> rows() const;

    friend bool operator==(const ChernMatrix&, const ChernMatrix&) = default;

private:
    int dim_ = 0;
    std::array<std::array<int, kMaxDim>, kMaxDim> c_{};
};

struct BundleData {
    TorusGeometry geometry;
    ChernMatrix chern;
    Cochain theta0;  // link phase per oriented edge, radians
    Cochain f0;      // constant curvature 2pi c_ij / (L_i L_j)
};

class Section {
public:
    Section() = default;
    explicit Section(const TorusGeometry& geom, Complex fill = {0.0, 0.0})
        : geom_(geom), values_(geom.site_count(), fill) {}

    const TorusGeometry& geometry() const { return geom_; }
    std::size_t size() const { return values_.size(); }
    Complex& operator[](std::size_t i) { return values_[i]; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    std::vector<Complex>& values() { return values_; }
    const std::vector<Complex>& values() const { return values_; }

private:
    TorusGeometry geom_;
    std::vector<Complex> values_;
};

// Real 1-cochain representing the connection perturbation A.
class Gauge1Form : public Cochain {
public:
    Gauge1Form() = default;
    explicit Gauge1Form(const TorusGeometry& geom) : Cochain(geom, 1) {}
    explicit Gauge1Form(Cochain c) : Cochain(std::move(c)) {
        if (degree() != 1) throw DegreeError("Gauge1Form requires a 1-cochain");
    }
};

// Complex field with one value per oriented edge, stored like a 1-cochain.
struct EdgeField {
    TorusGeometry geometry;
    std::vector<Complex> values;
};

BundleData build_background(const TorusGeometry& geom, const ChernMatrix& chern);

void require_compatible(const Section& u, const Cochain& a, const BundleData& b);

// (D_A u)_e = (u(y) exp(-i(theta0_e + h A_e)) - u(x)) / h on the edge x -> y.
EdgeField covariant_difference(const Section& u, const Gauge1Form& a, const BundleData& b);

// F_A = F0 + dA.
Cochain curvature(const Gauge1Form& a, const BundleData& b);

// Sums of h_i h_j w_ij over every closed (i, j) coordinate slice, divided by 2pi.
std::vector<double> chern_slice_pairings(const Cochain& two_form, int i, int j);

// Max over plaquettes of the distance between the theta0 holonomy and
// h_i h_j F0_ij modulo 2pi.
double holonomy_residue(const BundleData& b);

}  // namespace ymh
