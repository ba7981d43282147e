#include "ymh/bundle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ymh {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ChernMatrix::ChernMatrix(int dim) : dim_(dim) {
    if (dim < 2 || dim > kMaxDim) throw InvalidArgument("chern matrix: dimension must be 2 or 3");
}

ChernMatrix ChernMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    ChernMatrix m(static_cast<int>(rows.size()));
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw InvalidArgument("chern matrix must be square");
    for (int i = 0; i < m.dim_; ++i) {
        for (int j = 0; j < m.dim_; ++j) {
            const double v = rows[i][j];
            if (!std::isfinite(v) || v != std::round(v))
                throw InvalidArgument("chern matrix entries must be integers");
            if (v != -rows[j][i]) throw InvalidArgument("chern matrix must be antisymmetric");
            m.c_[i][j] = static_cast<int>(v);
        }
    }
    return m;
}

void ChernMatrix::set(int i, int j, int value) {
    if (i == j) throw InvalidArgument("chern matrix: diagonal entries are zero");
    c_[i][j] = value;
    c_[j][i] = -value;
}

bool ChernMatrix::trivial() const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (c_[i][j] != 0) return false;
    return true;
}

std::vector<std::vector<int>> ChernMatrix::rows() const {
    std::vector<std::vector<int>> r(dim_, std::vector<int>(dim_, 0));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r[i][j] = c_[i][j];
    return r;
}

BundleData build_background(const TorusGeometry& geom, const ChernMatrix& chern) {
    const int n = geom.dim();
    if (chern.dim() != n) throw InvalidArgument("build_background: chern matrix dimension mismatch");
    BundleData b{geom, chern, Cochain(geom, 1), Cochain(geom, 2)};

    // Landau gauge: theta_j(x) = 2pi c x_i / (N_i N_j), plus the seam phase
    // -2pi c x_j / N_j on the i-edges wrapping from x_i = N_i - 1 to 0.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int c = chern(i, j);
            const int plane = plane_component(n, i, j);
            const double flux = kTwoPi * c / (geom.length(i) * geom.length(j));
            for (double& v : b.f0.component(plane)) v = flux;
            if (c == 0) continue;
            auto theta_i = b.theta0.component(i);
            auto theta_j = b.theta0.component(j);
            const double ni = geom.sites(i);
            const double nj = geom.sites(j);
            for (std::size_t s = 0; s < geom.site_count(); ++s) {
                const Coords x = geom.coords(s);
                theta_j[s] += kTwoPi * c * x[i] / (ni * nj);
                if (x[i] == geom.sites(i) - 1) theta_i[s] -= kTwoPi * c * x[j] / nj;
            }
        }
    }
    return b;
}

void require_compatible(const Section& u, const Cochain& a, const BundleData& b) {
    if (!(u.geometry() == b.geometry) || !(a.geometry() == b.geometry))
        throw ShapeMismatch("section, gauge field and bundle must share one geometry");
    if (a.degree() != 1) throw DegreeError("gauge field must be a 1-cochain");
}

EdgeField covariant_difference(const Section& u, const Gauge1Form& a, const BundleData& b) {
    require_compatible(u, a, b);
    const auto& g = b.geometry;
    EdgeField out{g, std::vector<Complex>(g.cell_count(1))};
    const auto sites = static_cast<std::ptrdiff_t>(g.site_count());
    for (int i = 0; i < g.dim(); ++i) {
        const double h = g.spacing(i);
        const auto th = b.theta0.component(i);
        const auto ai = a.component(i);
        Complex* dst = out.values.data() + static_cast<std::size_t>(i) * g.site_count();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < sites; ++s) {
            const auto x = static_cast<std::size_t>(s);
            const double phase = th[x] + h * ai[x];
            const Complex link(std::cos(phase), -std::sin(phase));
            dst[x] = (u[g.shift(x, i)] * link - u[x]) / h;
        }
    }
    return out;
}

Cochain curvature(const Gauge1Form& a, const BundleData& b) {
    if (!(a.geometry() == b.geometry)) throw ShapeMismatch("curvature: geometry mismatch");
    Cochain f = exterior_derivative(a);
    f += b.f0;
    return f;
}

std::vector<double> chern_slice_pairings(const Cochain& w, int i, int j) {
    if (w.degree() != 2) throw DegreeError("chern pairing needs a 2-cochain");
    const auto& g = w.geometry();
    const int n = g.dim();
    if (i > j) std::swap(i, j);
    const auto comp = w.component(plane_component(n, i, j));
    const double area = g.spacing(i) * g.spacing(j);
    const int slices = n == 3 ? g.sites(transverse_axis(i, j)) : 1;
    std::vector<long double> sums(static_cast<std::size_t>(slices), 0.0L);
    for (std::size_t s = 0; s < g.site_count(); ++s) {
        const int slice = n == 3 ? g.coords(s)[transverse_axis(i, j)] : 0;
        sums[static_cast<std::size_t>(slice)] += comp[s];
    }
    std::vector<double> out;
    for (long double v : sums) out.push_back(static_cast<double>(v * area / kTwoPi));
    return out;
}

double holonomy_residue(const BundleData& b) {
    const auto& g = b.geometry;
    const int n = g.dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto ti = b.theta0.component(i);
            const auto tj = b.theta0.component(j);
            const auto f = b.f0.component(plane_component(n, i, j));
            const double area = g.spacing(i) * g.spacing(j);
            for (std::size_t x = 0; x < g.site_count(); ++x) {
                const double hol = ti[x] + tj[g.shift(x, i)] - ti[g.shift(x, j)] - tj[x];
                const double diff = hol - area * f[x];
                const double r = diff - kTwoPi * std::round(diff / kTwoPi);
                worst = std::max(worst, std::abs(r));
            }
        }
    }
    return worst;
}

}  // namespace ymh
