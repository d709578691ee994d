#include "kdv/hardy.hpp"

#include <cmath>

namespace kdv {

double base_point(const Contour& contour) { return 3.0 * contour.c * contour.scale; }

double l2_norm(const CVec& values, const Contour& contour) {
    return std::sqrt((contour.weights.cwiseAbs().array() * values.cwiseAbs2().array()).sum());
}

cplx cauchy(const CVec& values, const Contour& contour, cplx z) {
    const CVec k = (contour.nodes.array() - z).inverse().matrix();
    return contour_integral(values.cwiseProduct(k), contour);
}

cplx project(const BoundaryFunction& f, Side side, cplx z, int N) {
    const Contour& C = *f.contour;
    if (N < 0) N = f.N;
    if (C.distance(z) < C.dist_min()) throw std::domain_error("evaluation point too close to the contour");
    const bool in = C.inside(z);
    if ((side == Side::Plus) != in) throw std::domain_error("evaluation point on the wrong side of the contour");
    const cplx b = base_point(C);
    CVec g = f.values;
    if (N > 0) g.array() /= (C.nodes.array() - b).pow(double(N));
    cplx v = cauchy(g, C, z);
    if (N > 0) v *= std::pow(z - b, N);
    return side == Side::Plus ? v : -v;
}

CVec project_boundary(const BoundaryFunction& f, Side side, int N) {
    const Contour& C = *f.contour;
    if (N < 0) N = f.N;
    const cplx b = base_point(C);
    CVec g = f.values;
    CVec scale = CVec::Ones(C.size());
    if (N > 0) {
        scale = (C.nodes.array() - b).pow(double(N)).matrix();
        g.array() /= scale.array();
    }
    CVec p = C.boundary_plus() * g;
    p.array() *= scale.array();
    if (side == Side::Minus) p = f.values - p;
    return p;
}

std::pair<CVec, CVec> even_odd_split(const CVec& values, const Contour& contour) {
    const int N = contour.size();
    if (values.size() != N || static_cast<int>(contour.neg.size()) != N)
        throw std::invalid_argument("broken symmetry index map");
    CVec e(N), o(N);
    for (int j = 0; j < N; ++j) {
        const int k = contour.neg[j];
        if (k < 0 || k >= N || contour.neg[k] != j) throw std::invalid_argument("broken symmetry index map");
        e(j) = 0.5 * (values(j) + values(k));
        o(j) = values(j) - e(j);
    }
    return {e, o};
}

double plus_defect(const BoundaryFunction& f) {
    const Contour& C = *f.contour;
    const cplx b = base_point(C);
    CVec g = f.values;
    if (f.N > 0) g.array() /= (C.nodes.array() - b).pow(double(f.N));
    const CVec m = g - C.boundary_plus() * g;
    return l2_norm(m, C) / std::max(l2_norm(g, C), 1e-300);
}

double minus_defect(const BoundaryFunction& f) {
    const Contour& C = *f.contour;
    const CVec p = C.boundary_plus() * f.values;
    return l2_norm(p, C) / std::max(l2_norm(f.values, C), 1e-300);
}

}  // namespace kdv
