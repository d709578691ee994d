#include "kdv/contour.hpp"

#include <algorithm>
#include <cmath>

namespace kdv {

namespace {

struct BranchPoint {
    cplx lam, lu, luu;
};

BranchPoint right_branch(int n, double c, double y_max, double u_max, double u) {
    const double s = y_max / std::sinh(u_max);
    const double y = s * std::sinh(u);
    const double yu = s * std::cosh(u);
    const double yuu = y;
    const double a = 0.5 * (n - 1);
    const double r = 1.0 + y * y;
    const double om = c * std::pow(r, -a);
    const double om1 = -2.0 * a * y * om / r;
    const double om2 = -2.0 * a * om / r + (-2.0 * a * y) * (om1 / r - 2.0 * y * om / (r * r));
    BranchPoint p;
    p.lam = cplx(om, y);
    p.lu = cplx(om1, 1.0) * yu;
    p.luu = om2 * yu * yu + cplx(om1, 1.0) * yuu;
    return p;
}

CMat assemble_boundary_plus(const Contour& C) {
    const int N = C.size();
    const int M = C.half;
    const Eigen::MatrixXd D = fd_first_derivative(M, C.h);
    CMat K = CMat::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            if (i != j) K(i, j) = C.weights(j) / (C.nodes(j) - C.nodes(i));
        }
        K(i, i) = C.h * C.d2lam(i) / (2.0 * C.dlam(i));
    }
    for (int b = 0; b < 2; ++b) {
        K.block(b * M, b * M, M, M) += C.h * D.cast<cplx>();
    }
    K /= two_pi_i;
    K.diagonal().array() += 0.5;
    return K;
}

}  // namespace

Eigen::MatrixXd fd_first_derivative(int m, double h, int order) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
    const int p = order / 2;
    const int w = order + 1;
    for (int i = 0; i < m; ++i) {
        const int lo = std::max(0, std::min(i - p, m - w));
        Eigen::MatrixXd A(w, w);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(w);
        rhs(1) = 1.0;
        for (int r = 0; r < w; ++r) {
            for (int k = 0; k < w; ++k) A(r, k) = std::pow(double(lo + k - i), r);
        }
        const Eigen::VectorXd coef = A.fullPivLu().solve(rhs);
        for (int k = 0; k < w; ++k) D(i, lo + k) = coef(k) / h;
    }
    return D;
}

double Contour::omega(double y) const {
    const double ys = y / scale;
    return scale * c * std::pow(1.0 + ys * ys, -0.5 * (n - 1));
}

bool Contour::inside(cplx z) const { return std::abs(z.real()) < omega(z.imag()); }

double Contour::distance(cplx z) const {
    double best = (nodes.array() - z).abs().minCoeff();
    const double span = std::max(best, 1e-3);
    const int samples = 4000;
    for (int k = 0; k <= samples; ++k) {
        const double y = z.imag() - span + 2.0 * span * k / samples;
        const double om = omega(y);
        best = std::min(best, std::abs(z - cplx(om, y)));
        best = std::min(best, std::abs(z - cplx(-om, y)));
    }
    return best;
}

ContourPtr build_contour(int n, double c, double y_max, int node_count, double u_max) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("contour degree n must be odd and positive");
    if (!(c > 0.0)) throw std::invalid_argument("contour width c must be positive");
    if (!(y_max > 0.0)) throw std::invalid_argument("contour height y_max must be positive");
    if (node_count < 8 || node_count % 4 != 0)
        throw std::invalid_argument("node_count must be a multiple of 4 and at least 8");
    if (!(u_max > 0.0)) throw std::invalid_argument("u_max must be positive");

    auto C = std::make_shared<Contour>();
    C->n = n;
    C->c = c;
    C->y_max = y_max;
    C->u_max = u_max;
    const int M = node_count / 2;
    C->half = M;
    C->h = 2.0 * u_max / (M - 1);
    C->nodes.resize(node_count);
    C->weights.resize(node_count);
    C->dlam.resize(node_count);
    C->d2lam.resize(node_count);
    C->neg.resize(node_count);
    C->conj.resize(node_count);
    for (int j = 0; j < M; ++j) {
        const double u = -u_max + j * C->h;
        const BranchPoint p = right_branch(n, c, y_max, u_max, u);
        C->nodes(j) = p.lam;
        C->dlam(j) = p.lu;
        C->d2lam(j) = p.luu;
        C->nodes(M + j) = -p.lam;
        C->dlam(M + j) = -p.lu;
        C->d2lam(M + j) = -p.luu;
        C->neg[j] = M + j;
        C->neg[M + j] = j;
        C->conj[j] = M - 1 - j;
        C->conj[M + j] = 2 * M - 1 - j;
    }
    // Exact mirror so the symmetry maps hold bitwise.
    for (int j = 0; j < M / 2; ++j) {
        const int k = M - 1 - j;
        C->nodes(k) = std::conj(C->nodes(j));
        C->nodes(M + k) = -C->nodes(k);
        C->dlam(k) = -std::conj(C->dlam(j));
        C->dlam(M + k) = -C->dlam(k);
        C->d2lam(k) = std::conj(C->d2lam(j));
        C->d2lam(M + k) = -C->d2lam(k);
    }
    C->weights = C->h * C->dlam;
    C->end_top = right_branch(n, c, y_max, u_max, u_max + 0.5 * C->h).lam;
    C->end_bottom = right_branch(n, c, y_max, u_max, -u_max - 0.5 * C->h).lam;
    C->kplus = std::make_shared<const CMat>(assemble_boundary_plus(*C));
    return C;
}

ContourPtr scale_contour(const Contour& contour, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("scale factor must be positive");
    auto C = std::make_shared<Contour>(contour);
    C->scale = contour.scale * sigma;
    C->nodes *= sigma;
    C->weights *= sigma;
    C->dlam *= sigma;
    C->d2lam *= sigma;
    C->end_top *= sigma;
    C->end_bottom *= sigma;
    return C;
}

cplx contour_integral(const CVec& samples, const Contour& contour) {
    if (samples.size() != contour.nodes.size()) throw std::invalid_argument("sample count does not match contour");
    if (!samples.allFinite()) throw std::invalid_argument("non-finite contour sample");
    return contour.weights.cwiseProduct(samples).sum() / two_pi_i;
}

cplx residue_indicator(const Contour& contour, cplx z) {
    const CVec s = (contour.nodes.array() - z).inverse().matrix();
    const cplx rt = contour.end_top, rb = contour.end_bottom;
    const cplx lt = -rb, lb = -rt;
    const cplx tails = std::log(lt - z) - std::log(rt - z) + std::log(rb - z) - std::log(lb - z);
    return contour_integral(s, contour) + tails / two_pi_i;
}

double tail_magnitude(const CVec& samples, const Contour& contour) {
    const int M = contour.half;
    double t = 0.0;
    for (int j : {0, 1, M - 2, M - 1, M, M + 1, 2 * M - 2, 2 * M - 1}) t = std::max(t, std::abs(samples(j)));
    return t;
}

}  // namespace kdv
