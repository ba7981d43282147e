#pragma once

// Periodic cubical lattice on a flat torus, cochain storage and the discrete
// exterior calculus (d, d*, Hodge Laplacian).
//
// A k-cochain stores one real sample per (component, site), where a component
// is an increasing k-tuple of axes. The sample attached to site x and axes
// (i_1 < ... < i_k) is the form component w_{i_1...i_k} of the cell spanned
// from x along those axes. Every sample carries the full cell weight prod(h_i).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ymh/error.hpp"

namespace ymh {

inline constexpr int kMaxDim = 3;

using Coords = std::array<int, kMaxDim>;

class TorusGeometry {
public:
    TorusGeometry() = default;
    TorusGeometry(std::vector<int> sites, std::vector<double> lengths);

    int dim() const { return dim_; }
    int sites(int axis) const { return sites_[axis]; }
    double length(int axis) const { return lengths_[axis]; }
    double spacing(int axis) const { return lengths_[axis] / sites_[axis]; }
    std::size_t stride(int axis) const { return strides_[axis]; }

    std::size_t site_count() const { return site_count_; }
    std::size_t cell_count(int k) const;
    double cell_volume() const;
    double volume() const;
    double min_spacing() const;

    Coords coords(std::size_t site) const;
    std::size_t index(const Coords& c) const;
    std::size_t shift(std::size_t site, int axis, int step = 1) const;

    std::vector<int> site_vector() const;
    std::vector<double> length_vector() const;

    friend bool operator==(const TorusGeometry&, const TorusGeometry&) = default;

private:
    int dim_ = 0;
    std::array<int, kMaxDim> sites_{1, 1, 1};
    std::array<double, kMaxDim> lengths_{1.0, 1.0, 1.0};
    std::array<std::size_t, kMaxDim> strides_{1, 1, 1};
    std::size_t site_count_ = 0;
};

int binomial(int n, int k);

// Axis tuple of each component of a degree-k cochain in dimension n, in
// lexicographic order. Only the first k entries of each tuple are used.
const std::vector<Coords>& component_axes(int n, int k);
int component_count(int n, int k);
// Component index of the (i, j) plane for a 2-cochain, i < j.
int plane_component(int n, int i, int j);
// Axis transverse to the (i, j) plane in three dimensions.
int transverse_axis(int i, int j);

class Cochain {
public:
    Cochain() = default;
    Cochain(const TorusGeometry& geom, int degree, double fill = 0.0);

    const TorusGeometry& geometry() const { return geom_; }
    int degree() const { return degree_; }
    int components() const { return components_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> component(int c) {
        return {values_.data() + static_cast<std::size_t>(c) * geom_.site_count(), geom_.site_count()};
    }
    std::span<const double> component(int c) const {
        return {values_.data() + static_cast<std::size_t>(c) * geom_.site_count(), geom_.site_count()};
    }
    double& at(int c, std::size_t site) { return values_[static_cast<std::size_t>(c) * geom_.site_count() + site]; }
    double at(int c, std::size_t site) const {
        return values_[static_cast<std::size_t>(c) * geom_.site_count() + site];
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(double s);
    // this += s * o
    Cochain& axpy(double s, const Cochain& o);

    double max_abs() const;

private:
    TorusGeometry geom_;
    int degree_ = 0;
    int components_ = 0;
    std::vector<double> values_;
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator-(Cochain a, const Cochain& b);
Cochain operator*(double s, Cochain a);

void require_same_shape(const Cochain& a, const Cochain& b, const char* what);

Cochain exterior_derivative(const Cochain& c);
Cochain codifferential(const Cochain& c);
// Positive Hodge Laplacian -Delta = d d* + d* d.
Cochain laplacian(const Cochain& c);

double inner_product(const Cochain& a, const Cochain& b);
double l2_norm(const Cochain& c);

// Stencil eigenvalue of -Delta for the Fourier mode with integer wave numbers k.
double stencil_eigenvalue(const TorusGeometry& geom, const Coords& wave);
// All eigenvalues of -Delta on degree-k cochains (with multiplicity).
std::vector<double> laplacian_spectrum(const TorusGeometry& geom, int k);

}  // namespace ymh
