#include "kdv/toeplitz.hpp"

#include <cmath>

#include <boost/math/special_functions/binomial.hpp>

#include "kdv/hardy.hpp"

namespace kdv {

cplx split_kernel(cplx z, int p, double P, int k) {
    const cplx w = z * z / (P * P);
    cplx T = 0.0;
    cplx pw = 1.0;
    for (int j = 0; j <= k && 2 * j <= p - 1; ++j) {
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        T += sgn * boost::math::binomial_coefficient<double>(k, j) * pw;
        pw *= w;
    }
    return std::pow(z, -p) * (1.0 - T * std::pow(1.0 / (1.0 - w), k));
}

cplx split_f2(cplx z, const std::vector<double>& asym, double P, int k) {
    cplx s = 1.0;
    for (std::size_t i = 0; i < asym.size(); ++i) {
        if (asym[i] != 0.0) s += asym[i] * split_kernel(z, static_cast<int>(i) + 2, P, k);
    }
    return s;
}

double winding_number(const CVec& values, const Contour& contour) {
    const int N = contour.size();
    double total = 0.0;
    for (int j = 0; j < N; ++j) {
        const cplx a = values(j);
        const cplx b = values((j + 1) % N);
        total += std::arg(b / a);
    }
    return total / (2.0 * pi);
}

VectorSymbol symbol_from_samples(const ContourPtr& contour, const CVec& a1, const CVec& a2, const CVec& f1,
                                 const CVec& f2, int L, bool real) {
    const Eigen::Index N = contour->size();
    if (a1.size() != N || a2.size() != N || f1.size() != N || f2.size() != N)
        throw std::invalid_argument("symbol samples do not match contour");
    VectorSymbol s;
    s.contour = contour;
    s.a1 = a1;
    s.a2 = a2;
    s.f1 = f1;
    s.f2 = f2;
    s.L = L;
    s.real = real;
    return s;
}

VectorSymbol free_symbol(const ContourPtr& contour, int L) {
    const CVec one = CVec::Ones(contour->size());
    VectorSymbol s = symbol_from_samples(contour, one, one, one, one, L, true);
    s.f2_eval = [](cplx) { return cplx(1.0); };
    return s;
}

VectorSymbol symbol_from_m(const MFunction& m, int L, const ContourPtr& contour, const SplitOptions& opt) {
    if (L < 2) throw std::invalid_argument("decay order L must be at least 2");
    if (L == 2 && !opt.allow_experimental_l2) throw std::invalid_argument("L = 2 requires the experimental flag");
    if (static_cast<int>(m.asym.size()) < L - 2)
        throw std::invalid_argument("m-function is missing asymptotic coefficients for the requested L");
    const Contour& C = *contour;
    const int N = C.size();
    const std::vector<double> coef(m.asym.begin(), m.asym.begin() + (L - 2));
    const int k = L / 2;

    CVec a2(N);
    for (int j = 0; j < N; ++j) a2(j) = m(C.nodes(j)) / C.nodes(j);
    if (!a2.allFinite()) throw std::domain_error("m-function is not finite on the contour");

    const double cs = C.c * C.scale;
    std::vector<double> ladder;
    if (opt.radius > 0.0) {
        ladder = {opt.radius};
    } else {
        for (double f : {1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0}) ladder.push_back(f * cs);
    }
    CVec f2(N);
    double P = 0.0;
    for (double cand : ladder) {
        for (int j = 0; j < N; ++j) f2(j) = split_f2(C.nodes(j), coef, cand, k);
        const double wind = winding_number(f2, C);
        const double lo = f2.cwiseAbs().minCoeff();
        P = cand;
        if (std::abs(wind) < 0.5 && lo >= 0.25) break;
        if (opt.radius > 0.0) break;
    }
    if (std::abs(winding_number(f2, C)) >= 0.5) throw std::domain_error("split f2 has zeros in D+");
    if (!(P > cs)) throw std::domain_error("split poles must lie in D-");

    const CVec one = CVec::Ones(N);
    VectorSymbol s = symbol_from_samples(contour, one, a2, one, f2, L, m.real);
    s.split_radius = P;
    s.f2_eval = [coef, P, k](cplx z) { return split_f2(z, coef, P, k); };
    return s;
}

double decay_report(const VectorSymbol& a) {
    const CVec lamL = a.contour->nodes.array().abs().pow(double(a.L)).cast<cplx>();
    const double d1 = lamL.cwiseProduct(a.t1()).cwiseAbs().maxCoeff();
    const double d2 = lamL.cwiseProduct(a.t2()).cwiseAbs().maxCoeff();
    return std::max(d1, d2);
}

bool realness(const VectorSymbol& a, double tol) {
    const Contour& C = *a.contour;
    for (int j = 0; j < C.size(); ++j) {
        const int k = C.conj[j];
        if (std::abs(a.a1(k) - std::conj(a.a1(j))) > tol * (1.0 + std::abs(a.a1(j)))) return false;
        if (std::abs(a.a2(k) - std::conj(a.a2(j))) > tol * (1.0 + std::abs(a.a2(j)))) return false;
    }
    return true;
}

namespace {

// f-part scaled by gf, remainder scaled by gt and mapped through the kernel K.
CMat assemble_with(const VectorSymbol& a, const CVec& gf, const CVec& gt, const CMat& K) {
    const Contour& C = *a.contour;
    const int N = C.size();
    if (gf.size() != N || gt.size() != N) throw std::invalid_argument("group samples do not match contour");
    const CVec e1 = gt.cwiseProduct(a.t1());
    const CVec e2 = gt.cwiseProduct(a.t2());
    if (!e1.allFinite() || !e2.allFinite()) throw std::domain_error("decay violation: non-finite symbol remainder");
    CMat A(N, N);
    for (int j = 0; j < N; ++j) {
        const int nj = C.neg[j];
        const cplx alpha = 0.5 * (e1(j) + e2(j));
        const cplx beta = 0.5 * (e1(nj) - e2(nj));
        A.col(j) = K.col(j) * alpha + K.col(nj) * beta;
    }
    for (int j = 0; j < N; ++j) {
        const int nj = C.neg[j];
        const cplx d1 = gf(j) * a.f1(j);
        const cplx d2 = gf(j) * a.f2(j);
        A(j, j) += 0.5 * (d1 + d2);
        A(j, nj) += 0.5 * (d1 - d2);
    }
    return A;
}

}  // namespace

CMat assemble_toeplitz(const VectorSymbol& a, const CVec& g) { return assemble_with(a, g, g, a.contour->boundary_plus()); }

CMat conjugated_kernel(const Contour& C, const CVec& g, const CVec& dlog_g) {
    const int N = C.size();
    if (g.size() != N || dlog_g.size() != N) throw std::invalid_argument("group samples do not match contour");
    CMat Kg = C.boundary_plus();
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
            const cplx k = (i == j) ? C.weights(j) * dlog_g(j)
                                    : C.weights(j) * (g(j) / g(i) - 1.0) / (C.nodes(j) - C.nodes(i));
            Kg(i, j) += k / two_pi_i;
        }
    return Kg;
}

CMat assemble_relative(const VectorSymbol& a, const CVec& g, const CVec& dlog_g) {
    const CVec one = CVec::Ones(a.contour->size());
    return assemble_with(a, one, one, conjugated_kernel(*a.contour, g, dlog_g));
}

CVec log_derivative(const CVec& g, const Contour& C) {
    const int M = C.half;
    const Eigen::MatrixXd D = fd_first_derivative(M, C.h);
    CVec d(C.size());
    for (int b = 0; b < 2; ++b) d.segment(b * M, M) = D.cast<cplx>() * g.segment(b * M, M);
    return d.cwiseQuotient(C.dlam).cwiseQuotient(g);
}

CMat assemble_toeplitz(const VectorSymbol& a, const GroupElement& g) {
    return assemble_toeplitz(a, sample(g, a.contour->nodes));
}

CMat assemble_toeplitz(const VectorSymbol& a) { return assemble_toeplitz(a, CVec::Ones(a.contour->size())); }

ToeplitzSolver::ToeplitzSolver(const CMat& M, double cond_max) : lu_(M) {
    const double rc = lu_.rcond();
    cond_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond_ <= cond_max)) throw FlowSingularity("Toeplitz matrix is numerically singular", cond_);
}

CVec ToeplitzSolver::solve(const CVec& rhs) const { return lu_.solve(rhs); }

cplx ToeplitzSolver::log_det() const {
    const CMat& LU = lu_.matrixLU();
    cplx s = 0.0;
    for (Eigen::Index i = 0; i < LU.rows(); ++i) s += std::log(LU(i, i));
    if (lu_.permutationP().determinant() < 0) s += cplx(0.0, pi);
    return s;
}

SolveReport solve_toeplitz(const CMat& M, const CVec& rhs, double cond_max) {
    if (M.rows() != rhs.size()) throw std::invalid_argument("right-hand side does not match matrix");
    ToeplitzSolver S(M, cond_max);
    SolveReport r;
    r.u = S.solve(rhs);
    r.cond = S.cond();
    r.residual = (M * r.u - rhs).norm() / std::max(rhs.norm(), 1e-300);
    return r;
}

namespace {

CVec parity(const CVec& v, const Contour& C, bool even) {
    auto [e, o] = even_odd_split(v, C);
    return even ? e : o;
}

void product_components(const CVec& m1, const CVec& m2, const CVec& n1, const CVec& n2, const Contour& C,
                        CVec& p1, CVec& p2) {
    p1 = m1.cwiseProduct(parity(n1, C, true)) + m2.cwiseProduct(parity(n1, C, false));
    p2 = m1.cwiseProduct(parity(n2, C, false)) + m2.cwiseProduct(parity(n2, C, true));
}

void inverse_components(const CVec& m1, const CVec& m2, const Contour& C, CVec& i1, CVec& i2) {
    const int N = C.size();
    CVec den(N);
    for (int j = 0; j < N; ++j) {
        const int k = C.neg[j];
        den(j) = m1(j) * m2(k) + m1(k) * m2(j);
    }
    if (den.cwiseAbs().minCoeff() < 1e-12) throw std::domain_error("symbol is not invertible in M_L");
    i1 = (2.0 * (parity(m2, C, true) - parity(m1, C, false))).cwiseQuotient(den);
    i2 = (2.0 * (parity(m1, C, true) - parity(m2, C, false))).cwiseQuotient(den);
}

}  // namespace

VectorSymbol multiply_symbols(const VectorSymbol& m, const VectorSymbol& n) {
    const Contour& C = *m.contour;
    VectorSymbol r = m;
    product_components(m.a1, m.a2, n.a1, n.a2, C, r.a1, r.a2);
    product_components(m.f1, m.f2, n.f1, n.f2, C, r.f1, r.f2);
    r.L = std::min(m.L, n.L);
    r.real = m.real && n.real;
    r.split_radius = 0.0;
    r.f2_eval = nullptr;
    return r;
}

VectorSymbol invert_symbol(const VectorSymbol& m) {
    const Contour& C = *m.contour;
    VectorSymbol r = m;
    inverse_components(m.a1, m.a2, C, r.a1, r.a2);
    inverse_components(m.f1, m.f2, C, r.f1, r.f2);
    r.split_radius = 0.0;
    r.f2_eval = nullptr;
    return r;
}

VectorSymbol scale_symbol(const VectorSymbol& a, const CVec& g) {
    VectorSymbol r = a;
    r.a1 = a.a1.cwiseProduct(g);
    r.a2 = a.a2.cwiseProduct(g);
    r.f1 = a.f1.cwiseProduct(g);
    r.f2 = a.f2.cwiseProduct(g);
    r.f2_eval = nullptr;
    return r;
}

}  // namespace kdv
