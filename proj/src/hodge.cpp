#include "ymh/hodge.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

#include "ymh/detail/reduce.hpp"

namespace ymh {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

std::size_t half_size(const TorusGeometry& g) {
    std::size_t s = 1;
    for (int i = 0; i + 1 < g.dim(); ++i) s *= static_cast<std::size_t>(g.sites(i));
    return s * static_cast<std::size_t>(g.sites(g.dim() - 1) / 2 + 1);
}

// Iterative conjugate-gradient solve of (-Delta + shift) v = f. When shift is
// zero the iterates are kept mean-free.
Cochain conjugate_gradient(const Cochain& f, double shift) {
    const bool project = shift == 0.0;
    auto apply = [&](const Cochain& x) {
        Cochain y = laplacian(x);
        if (shift != 0.0) y.axpy(shift, x);
        return y;
    };
    Cochain rhs = f;
    if (project) rhs -= harmonic_projection(rhs);
    const double fnorm = l2_norm(f);
    Cochain x(f.geometry(), f.degree());
    if (fnorm == 0.0) return x;
    Cochain r = rhs;
    Cochain p = r;
    double rr = inner_product(r, r);
    const std::size_t max_iter = 10 * f.geometry().site_count();
    const double target = 1e-13 * fnorm;
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= target) return x;
        Cochain ap = apply(p);
        const double alpha = rr / inner_product(p, ap);
        x.axpy(alpha, p);
        r.axpy(-alpha, ap);
        if (project) r -= harmonic_projection(r);
        const double rr_new = inner_product(r, r);
        p *= rr_new / rr;
        p += r;
        rr = rr_new;
    }
    throw SolverNotConverged("conjugate gradient did not converge", std::sqrt(rr) / fnorm);
}

}  // namespace

namespace detail {

std::vector<double> half_spectrum_eigenvalues(const TorusGeometry& g) {
    std::vector<double> out(half_size(g));
    const int n = g.dim();
    const int last = g.sites(n - 1) / 2 + 1;
    std::size_t idx = 0;
    Coords k{0, 0, 0};
    const int outer0 = g.sites(0);
    const int outer1 = n == 3 ? g.sites(1) : 1;
    for (int a = 0; a < outer0; ++a) {
        for (int b = 0; b < outer1; ++b) {
            for (int c = 0; c < last; ++c) {
                if (n == 3) {
                    k = {a, b, c};
                } else {
                    k = {a, c, 0};
                }
                out[idx++] = stencil_eigenvalue(g, k);
            }
        }
    }
    return out;
}

Cochain apply_symbol_table(const Cochain& w, const std::vector<double>& multipliers) {
    const auto& g = w.geometry();
    const std::size_t real_size = g.site_count();
    const std::size_t complex_size = half_size(g);
    std::unique_ptr<double, FftwFree> in(fftw_alloc_real(real_size));
    std::unique_ptr<fftw_complex, FftwFree> spec(fftw_alloc_complex(complex_size));

    const std::vector<int> dims = g.site_vector();
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        forward = fftw_plan_dft_r2c(g.dim(), dims.data(), in.get(), spec.get(), FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r(g.dim(), dims.data(), spec.get(), in.get(), FFTW_ESTIMATE);
    }

    Cochain out(g, w.degree());
    const double norm = 1.0 / static_cast<double>(real_size);
    for (int c = 0; c < w.components(); ++c) {
        const auto src = w.component(c);
        std::copy(src.begin(), src.end(), in.get());
        fftw_execute(forward);
        for (std::size_t i = 0; i < complex_size; ++i) {
            const double m = multipliers[i] * norm;
            spec.get()[i][0] *= m;
            spec.get()[i][1] *= m;
        }
        fftw_execute(backward);
        auto dst = out.component(c);
        std::copy(in.get(), in.get() + real_size, dst.begin());
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    return out;
}

}  // namespace detail

Cochain harmonic_projection(const Cochain& w) {
    Cochain out(w.geometry(), w.degree());
    const std::size_t sites = w.geometry().site_count();
    for (int c = 0; c < w.components(); ++c) {
        const auto src = w.component(c);
        const long double sum = detail::blocked_sum(sites, [&](std::size_t i) { return static_cast<long double>(src[i]); });
        const double mean = static_cast<double>(sum / static_cast<long double>(sites));
        for (double& v : out.component(c)) v = mean;
    }
    return out;
}

Cochain green(const Cochain& w) {
    return apply_spectral_symbol(w, [](double lambda) { return lambda == 0.0 ? 0.0 : -1.0 / lambda; });
}

HodgeParts hodge_decompose(const Cochain& w) {
    const auto& g = w.geometry();
    const int k = w.degree();
    const int n = g.dim();
    HodgeParts parts;
    parts.harmonic = harmonic_projection(w);
    const Cochain gw = green(w);
    if (k >= 1) {
        parts.exact_potential = codifferential(gw);
        parts.exact_potential *= -1.0;
    }
    if (k < n) {
        parts.coexact_potential = exterior_derivative(gw);
        parts.coexact_potential *= -1.0;
    }
    return parts;
}

Cochain solve_london(const Cochain& f, SolverMethod method) {
    if (method == SolverMethod::iterative) return conjugate_gradient(f, 1.0);
    return apply_spectral_symbol(f, [](double lambda) { return 1.0 / (1.0 + lambda); });
}

Cochain solve_poisson(const Cochain& f, SolverMethod method) {
    const double fnorm = l2_norm(f);
    const double hnorm = l2_norm(harmonic_projection(f));
    if (hnorm > 1e-10 * fnorm) throw NonCompatibleSource("solve_poisson: source has a harmonic component");
    if (method == SolverMethod::iterative) return conjugate_gradient(f, 0.0);
    return apply_spectral_symbol(f, [](double lambda) { return lambda == 0.0 ? 0.0 : 1.0 / lambda; });
}

}  // namespace ymh
