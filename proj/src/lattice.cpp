#include "ymh/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ymh/detail/reduce.hpp"

namespace ymh {

TorusGeometry::TorusGeometry(std::vector<int> sites, std::vector<double> lengths) {
    if (sites.size() != lengths.size())
        throw InvalidArgument("geometry: sites and lengths must have the same dimension");
    dim_ = static_cast<int>(sites.size());
    if (dim_ != 2 && dim_ != 3) throw InvalidArgument("geometry: dimension must be 2 or 3");
    site_count_ = 1;
    for (int i = 0; i < dim_; ++i) {
        if (sites[i] < 4) throw InvalidArgument("geometry: need at least 4 sites per axis");
        if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i]))
            throw InvalidArgument("geometry: lengths must be positive");
        sites_[i] = sites[i];
        lengths_[i] = lengths[i];
        site_count_ *= static_cast<std::size_t>(sites[i]);
    }
    // Row-major: axis 0 varies slowest.
    std::size_t s = 1;
    for (int i = dim_ - 1; i >= 0; --i) {
        strides_[i] = s;
        s *= static_cast<std::size_t>(sites_[i]);
    }
}

std::size_t TorusGeometry::cell_count(int k) const {
    return static_cast<std::size_t>(binomial(dim_, k)) * site_count_;
}

double TorusGeometry::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim_; ++i) v *= spacing(i);
    return v;
}

double TorusGeometry::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim_; ++i) v *= lengths_[i];
    return v;
}

double TorusGeometry::min_spacing() const {
    double h = spacing(0);
    for (int i = 1; i < dim_; ++i) h = std::min(h, spacing(i));
    return h;
}

Coords TorusGeometry::coords(std::size_t site) const {
    Coords c{0, 0, 0};
    for (int i = 0; i < dim_; ++i) c[i] = static_cast<int>((site / strides_[i]) % static_cast<std::size_t>(sites_[i]));
    return c;
}

std::size_t TorusGeometry::index(const Coords& c) const {
    std::size_t s = 0;
    for (int i = 0; i < dim_; ++i) {
        int x = c[i] % sites_[i];
        if (x < 0) x += sites_[i];
        s += static_cast<std::size_t>(x) * strides_[i];
    }
    return s;
}

std::size_t TorusGeometry::shift(std::size_t site, int axis, int step) const {
    const auto n = static_cast<long>(sites_[axis]);
    const long x = static_cast<long>((site / strides_[axis]) % static_cast<std::size_t>(n));
    long y = (x + step) % n;
    if (y < 0) y += n;
    return static_cast<std::size_t>(static_cast<long>(site) + (y - x) * static_cast<long>(strides_[axis]));
}

std::vector<int> TorusGeometry::site_vector() const { return {sites_.begin(), sites_.begin() + dim_}; }

std::vector<double> TorusGeometry::length_vector() const { return {lengths_.begin(), lengths_.begin() + dim_}; }

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

std::vector<Coords> build_components(int n, int k) {
    std::vector<Coords> out;
    // Enumerate increasing k-tuples of {0..n-1} in lexicographic order.
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        Coords c{-1, -1, -1};
        int m = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) c[m++] = i;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct ComponentTables {
    std::array<std::array<std::vector<Coords>, kMaxDim + 1>, kMaxDim + 1> axes;
    ComponentTables() {
        for (int n = 1; n <= kMaxDim; ++n)
            for (int k = 0; k <= n; ++k) axes[n][k] = build_components(n, k);
    }
};

const ComponentTables& tables() {
    static const ComponentTables t;
    return t;
}

int find_component(int n, int k, const Coords& axes) {
    const auto& list = component_axes(n, k);
    for (std::size_t c = 0; c < list.size(); ++c) {
        bool same = true;
        for (int m = 0; m < k; ++m) same = same && list[c][m] == axes[m];
        if (same) return static_cast<int>(c);
    }
    return -1;
}

// One term of (d w)_I = sum_m (-1)^m D+_{i_m} w_{I \ i_m}.
struct StencilTerm {
    int source;
    int axis;
    double sign;
};

std::vector<std::vector<StencilTerm>> d_terms(int n, int k) {
    const auto& out = component_axes(n, k + 1);
    std::vector<std::vector<StencilTerm>> terms(out.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        for (int m = 0; m <= k; ++m) {
            Coords rest{-1, -1, -1};
            int r = 0;
            for (int q = 0; q <= k; ++q)
                if (q != m) rest[r++] = out[c][q];
            terms[c].push_back({find_component(n, k, rest), out[c][m], (m % 2 == 0) ? 1.0 : -1.0});
        }
    }
    return terms;
}

// Transpose of d: (d* b)_J = sum_{i not in J} (-1)^{pos(i)} (-D-_i) b_{J + i}.
std::vector<std::vector<StencilTerm>> codiff_terms(int n, int k) {
    const auto& out = component_axes(n, k - 1);
    std::vector<std::vector<StencilTerm>> terms(out.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        for (int i = 0; i < n; ++i) {
            bool present = false;
            for (int q = 0; q < k - 1; ++q) present = present || out[c][q] == i;
            if (present) continue;
            Coords full{-1, -1, -1};
            int pos = 0;
            int r = 0;
            for (int q = 0; q < k - 1; ++q) {
                if (out[c][q] < i) ++pos;
            }
            bool placed = false;
            for (int q = 0; q < k - 1; ++q) {
                if (!placed && i < out[c][q]) {
                    full[r++] = i;
                    placed = true;
                }
                full[r++] = out[c][q];
            }
            if (!placed) full[r++] = i;
            terms[c].push_back({find_component(n, k, full), i, (pos % 2 == 0) ? 1.0 : -1.0});
        }
    }
    return terms;
}

}  // namespace

const std::vector<Coords>& component_axes(int n, int k) {
    if (n < 1 || n > kMaxDim || k < 0 || k > n) throw DegreeError("component_axes: degree out of range");
    return tables().axes[n][k];
}

int component_count(int n, int k) { return binomial(n, k); }

int plane_component(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return find_component(n, 2, Coords{i, j, -1});
}

int transverse_axis(int i, int j) { return 3 - i - j; }

Cochain::Cochain(const TorusGeometry& geom, int degree, double fill)
    : geom_(geom), degree_(degree), components_(binomial(geom.dim(), degree)) {
    if (degree < 0 || degree > geom.dim()) throw DegreeError("cochain degree out of range");
    values_.assign(geom.cell_count(degree), fill);
}

void require_same_shape(const Cochain& a, const Cochain& b, const char* what) {
    if (a.degree() != b.degree()) throw DegreeError(std::string(what) + ": degree mismatch");
    if (!(a.geometry() == b.geometry())) throw ShapeMismatch(std::string(what) + ": geometry mismatch");
}

Cochain& Cochain::operator+=(const Cochain& o) {
    require_same_shape(*this, o, "cochain +=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    require_same_shape(*this, o, "cochain -=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

Cochain& Cochain::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

Cochain& Cochain::axpy(double s, const Cochain& o) {
    require_same_shape(*this, o, "cochain axpy");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
    return *this;
}

double Cochain::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
Cochain operator*(double s, Cochain a) { return a *= s; }

Cochain exterior_derivative(const Cochain& c) {
    const auto& g = c.geometry();
    const int n = g.dim();
    const int k = c.degree();
    if (k >= n) throw DegreeError("exterior_derivative: degree must be below the dimension");
    static thread_local std::array<std::array<std::vector<std::vector<StencilTerm>>, kMaxDim + 1>, kMaxDim + 1> cache;
    auto& terms = cache[n][k];
    if (terms.empty()) terms = d_terms(n, k);

    Cochain out(g, k + 1);
    const auto sites = static_cast<std::ptrdiff_t>(g.site_count());
    for (int oc = 0; oc < out.components(); ++oc) {
        auto dst = out.component(oc);
        for (const auto& t : terms[oc]) {
            const auto src = c.component(t.source);
            const double scale = t.sign / g.spacing(t.axis);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t s = 0; s < sites; ++s) {
                const auto x = static_cast<std::size_t>(s);
                dst[x] += scale * (src[g.shift(x, t.axis)] - src[x]);
            }
        }
    }
    return out;
}

Cochain codifferential(const Cochain& c) {
    const auto& g = c.geometry();
    const int n = g.dim();
    const int k = c.degree();
    if (k < 1) throw DegreeError("codifferential: degree must be at least 1");
    static thread_local std::array<std::array<std::vector<std::vector<StencilTerm>>, kMaxDim + 1>, kMaxDim + 1> cache;
    auto& terms = cache[n][k];
    if (terms.empty()) terms = codiff_terms(n, k);

    Cochain out(g, k - 1);
    const auto sites = static_cast<std::ptrdiff_t>(g.site_count());
    for (int oc = 0; oc < out.components(); ++oc) {
        auto dst = out.component(oc);
        for (const auto& t : terms[oc]) {
            const auto src = c.component(t.source);
            const double scale = t.sign / g.spacing(t.axis);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t s = 0; s < sites; ++s) {
                const auto x = static_cast<std::size_t>(s);
                dst[x] -= scale * (src[x] - src[g.shift(x, t.axis, -1)]);
            }
        }
    }
    return out;
}

Cochain laplacian(const Cochain& c) {
    const int n = c.geometry().dim();
    const int k = c.degree();
    Cochain out(c.geometry(), k);
    if (k >= 1) out += exterior_derivative(codifferential(c));
    if (k < n) out += codifferential(exterior_derivative(c));
    return out;
}

double inner_product(const Cochain& a, const Cochain& b) {
    require_same_shape(a, b, "inner_product");
    const auto& av = a.values();
    const auto& bv = b.values();
    const long double s =
        detail::blocked_sum(av.size(), [&](std::size_t i) { return static_cast<long double>(av[i]) * bv[i]; });
    return static_cast<double>(s * a.geometry().cell_volume());
}

double l2_norm(const Cochain& c) { return std::sqrt(inner_product(c, c)); }

double stencil_eigenvalue(const TorusGeometry& geom, const Coords& wave) {
    double lambda = 0.0;
    for (int i = 0; i < geom.dim(); ++i) {
        const double h = geom.spacing(i);
        const double s = std::sin(std::numbers::pi * wave[i] / geom.sites(i));
        lambda += 4.0 * s * s / (h * h);
    }
    return lambda;
}

std::vector<double> laplacian_spectrum(const TorusGeometry& geom, int k) {
    std::vector<double> out;
    const int comps = binomial(geom.dim(), k);
    out.reserve(geom.cell_count(k));
    for (int c = 0; c < comps; ++c)
        for (std::size_t s = 0; s < geom.site_count(); ++s) out.push_back(stencil_eigenvalue(geom, geom.coords(s)));
    return out;
}

}  // namespace ymh
