#pragma once

#include <cmath>

#include "ymh/random_fields.hpp"

namespace ymh::test {

inline double max_diff(const Cochain& a, const Cochain& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

inline double max_diff(const Section& a, const Section& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline ChernMatrix chern2(int c) {
    ChernMatrix m(2);
    m.set(0, 1, c);
    return m;
}

inline ChernMatrix chern3(int c01, int c02, int c12) {
    ChernMatrix m(3);
    m.set(0, 1, c01);
    m.set(0, 2, c02);
    m.set(1, 2, c12);
    return m;
}

// Real cosine mode cos(2 pi k . x / N) as a 0-cochain.
inline Cochain cosine_mode(const TorusGeometry& g, const Coords& k) {
    Cochain c(g, 0);
    for (std::size_t x = 0; x < g.site_count(); ++x) {
        const Coords p = g.coords(x);
        double arg = 0.0;
        for (int i = 0; i < g.dim(); ++i) arg += 2.0 * M_PI * k[i] * p[i] / g.sites(i);
        c.at(0, x) = std::cos(arg);
    }
    return c;
}

// The same scalar field placed in every component of a degree-k cochain.
inline Cochain replicate(const Cochain& scalar, int degree) {
    Cochain c(scalar.geometry(), degree);
    for (int comp = 0; comp < c.components(); ++comp)
        for (std::size_t x = 0; x < scalar.size(); ++x) c.at(comp, x) = scalar.at(0, x);
    return c;
}

}  // namespace ymh::test
