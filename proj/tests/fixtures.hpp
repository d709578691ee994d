#pragma once

#include <random>
#include <vector>

#include "kdv/flow.hpp"
#include "kdv/potentials.hpp"

namespace fx {

using namespace kdv;

inline ContourPtr static_contour() {
    static const ContourPtr C = build_contour(1, 1.1, 15.0, 600, 3.5);
    return C;
}

inline ContourPtr flow_contour() {
    static const ContourPtr C = build_contour(3, 1.05, 10.0, 600, 3.0);
    return C;
}

inline const VectorSymbol& soliton() {
    static const VectorSymbol a = symbol_from_m(soliton_m(1.0), 8, static_contour());
    return a;
}

inline const VectorSymbol& soliton3() {
    static const VectorSymbol a = symbol_from_m(soliton_m(1.0), 8, flow_contour());
    return a;
}

// Points of D- at a safe distance from the contour, off both axes.
inline std::vector<cplx> outer_points(const Contour& C, int count, unsigned seed, double rmin = 1.5, double rmax = 6.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r(rmin * C.c, rmax * C.c), th(-pi, pi);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < count) {
        const cplx z = std::polar(r(rng), th(rng));
        if (!C.inside(z) && C.distance(z) > 0.25 * C.c && std::abs(z.imag()) > 1e-2 && std::abs(z.real()) > 1e-2)
            pts.push_back(z);
    }
    return pts;
}

inline double sech2(double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); }

}  // namespace fx
