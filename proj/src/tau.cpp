#include "kdv/tau.hpp"

#include <cmath>
#include <random>

namespace kdv {

namespace {

cplx lu_log_det(const Eigen::PartialPivLU<CMat>& lu) {
    const CMat& LU = lu.matrixLU();
    cplx ld = 0.0;
    for (Eigen::Index i = 0; i < LU.rows(); ++i) ld += std::log(LU(i, i));
    if (lu.permutationP().determinant() < 0) ld += cplx(0.0, pi);
    return ld;
}

// A = Mrel·Mbase^{-1} − I
TauValue tau_from(const CMat& Mrel, const ToeplitzSolver& base) {
    Eigen::PartialPivLU<CMat> lr(Mrel);
    TauValue t;
    t.log_det = lu_log_det(lr) - base.log_det();
    t.trace = Mrel.cwiseProduct(base.lu().inverse().transpose()).sum() - double(Mrel.rows());
    t.det = std::exp(t.log_det);
    t.det2 = std::exp(t.log_det - t.trace);
    return t;
}

}  // namespace

TauValue tau_det2(const VectorSymbol& a, const CVec& g, const CVec& dlog_g, double cond_max) {
    const ToeplitzSolver Sa(assemble_toeplitz(a), cond_max);
    return tau_from(assemble_relative(a, g, dlog_g), Sa);
}

TauValue tau_det2(const VectorSymbol& a, const CVec& g, double cond_max) {
    return tau_det2(a, g, log_derivative(g, *a.contour), cond_max);
}

TauValue tau_det2(const VectorSymbol& a, const GroupElement& g, double cond_max) {
    const CVec& z = a.contour->nodes;
    return tau_det2(a, sample(g, z), log_derivative(g, z), cond_max);
}

namespace {

cplx det_small(const CMat& A) { return A.fullPivLu().determinant(); }

}  // namespace

cplx tau_rational(const CharacteristicData& cd, const RationalFactor& r) {
    const auto& Z = r.zeros;
    const auto& P = r.poles;
    if (Z.empty() && P.size() == 1) return 1.0 + cd.phi_at(P[0]);
    if (Z.empty() && P.size() == 2) {
        const cplx z1 = P[0], z2 = P[1];
        if (std::abs(z1 - z2) < 1e-12) throw std::domain_error("repeated poles are not supported");
        return (1.0 + cd.phi_at(z1)) * (1.0 + cd.phi_at(z2)) * (cd.m_at(z1) - cd.m_at(z2)) / (z1 - z2);
    }
    if (Z.size() != P.size() || Z.empty()) throw std::domain_error("closed form needs order 0 or one/two poles");
    const int n = static_cast<int>(Z.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(Z[i] - Z[j]) < 1e-12 || std::abs(P[i] - P[j]) < 1e-12)
                throw std::domain_error("repeated zeros or poles are not supported");
    const RationalFactor rhat = r.inverse();
    cplx pref = 1.0;
    std::vector<cplx> m_zeta(n), m_meta(n);
    for (int j = 0; j < n; ++j) {
        const cplx dl = cd.delta_at(Z[j]);
        if (std::abs(dl) < 1e-14) throw std::domain_error("Delta vanishes at a zero of r");
        pref *= (cd.phi_at(P[j]) + 1.0) * (cd.phi_at(-Z[j]) + 1.0) / (dl * r.derivative(Z[j]) * rhat.derivative(P[j]));
        m_zeta[j] = cd.m_at(P[j]);
        m_meta[j] = cd.m_at(-Z[j]);
    }
    CMat A(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            A(i, j) = 1.0 / (Z[i] - P[j]);
            B(i, j) = (m_zeta[i] - m_meta[j]) / (P[i] * P[i] - Z[j] * Z[j]);
        }
    return pref * det_small(A) * det_small(B);
}

CocycleReport cocycle_check(const VectorSymbol& a, const GroupElement& g1, const GroupElement& g2) {
    const Contour& C = *a.contour;
    const int N = C.size();
    const CVec v1 = sample(g1, C.nodes), d1 = log_derivative(g1, C.nodes);
    const CVec v2 = sample(g2, C.nodes), d2 = log_derivative(g2, C.nodes);
    const CVec v12 = v1.cwiseProduct(v2), d12 = d1 + d2;
    const VectorSymbol a1 = scale_symbol(a, v1);

    const ToeplitzSolver Sa(assemble_toeplitz(a));
    const CMat R1 = assemble_relative(a, v1, d1);
    const CMat R12 = assemble_relative(a, v12, d12);
    const TauValue t12 = tau_from(R12, Sa);
    const TauValue t1 = tau_from(R1, Sa);
    const TauValue t2 = tau_det2(a1, v2, d2);

    // A1 = g1^{-1}T(g1 a)T(a)^{-1} − I,  A2 = (g1g2)^{-1}T(g1g2 a)T(g1 a)^{-1}g1 − I
    const CMat I = CMat::Identity(N, N);
    const CMat A1 = R1 * Sa.lu().inverse() - I;
    const CMat A2 = R12 * Eigen::PartialPivLU<CMat>(R1).inverse() - I;

    CocycleReport r;
    r.E = (A2 * A1).trace();
    r.lhs = t12.det2;
    r.rhs = t1.det2 * t2.det2 * std::exp(-r.E);
    r.plain_lhs = t12.det;
    r.plain_rhs = t1.det * t2.det;
    return r;
}

PositivityReport positivity_gate(const VectorSymbol& a, int trials, std::uint64_t seed) {
    if (!a.real) throw std::invalid_argument("positivity gate needs a real symbol");
    const Contour& C = *a.contour;
    const double cs = C.c * C.scale;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(1.5 * cs, 10.0 * cs);
    std::uniform_real_distribution<double> ang(0.05 * pi, 0.45 * pi);
    std::bernoulli_distribution coin(0.5);
    auto complex_point = [&]() {
        for (;;) {
            const double th = ang(rng) + (coin(rng) ? 0.0 : 0.5 * pi);
            const cplx z = std::polar(rad(rng), th);
            if (!C.inside(z) && C.distance(z) >= 0.25 * cs) return z;
        }
    };
    auto real_point = [&]() {
        for (;;) {
            const double s = rad(rng) * (coin(rng) ? 1.0 : -1.0);
            if (!C.inside(s) && C.distance(s) >= 0.25 * cs) return s;
        }
    };
    PositivityReport rep;
    rep.trials = trials;
    rep.min_tau = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const int type = i % 4 + 1;
        RationalFactor r;
        if (type == 1) {
            const cplx z = complex_point(), e = complex_point();
            r = q_factor(z) * q_factor(std::conj(z)) * p_factor(e) * p_factor(std::conj(e));
        } else if (type == 2) {
            r = q_factor(real_point()) * p_factor(real_point());
        } else if (type == 3) {
            const cplx z = complex_point();
            r = q_factor(z) * q_factor(std::conj(z)) * p_factor(real_point()) * p_factor(real_point());
        } else {
            const cplx e = complex_point();
            r = q_factor(real_point()) * q_factor(real_point()) * p_factor(e) * p_factor(std::conj(e));
        }
        const TauValue t = tau_det2(a, from_rational(r));
        const double re = t.det.real();
        rep.max_imag = std::max(rep.max_imag, std::abs(t.det.imag()));
        if (re < rep.min_tau) {
            rep.min_tau = re;
            rep.worst_type = type;
        }
        if (!(re > 0.0)) ++rep.violations;
    }
    return rep;
}

cplx m_prime_via_tau(const VectorSymbol& a, const GroupElement& g, cplx zeta, double eps) {
    const Contour& C = *a.contour;
    const CVec gv = sample(g, C.nodes);
    auto tau_g = [&](const RationalFactor& r) { return tau_det2(a, g * from_rational(r)).det2; };
    const cplx dir = zeta / std::abs(zeta);
    const cplx t_e = tau_g(q_factor(zeta) * q_factor(zeta + eps * dir));
    const cplx t_h = tau_g(q_factor(zeta) * q_factor(zeta + 0.5 * eps * dir));
    const cplx t_sq = 2.0 * t_h - t_e;
    const cplx t_q = tau_g(q_factor(zeta));
    const cplx t_1 = tau_det2(a, g).det2;

    const CMat Ma = assemble_toeplitz(a);
    ToeplitzSolver Sa(Ma);
    const CVec ginv = gv.cwiseInverse();
    const CVec w1 = Sa.solve(ginv);
    const CVec w2 = Sa.solve(ginv.cwiseProduct(C.nodes));
    const CVec theta =
        gv.cwiseProduct(C.nodes.cwiseProduct(tail_action(a, w1)) - tail_action(a, w2));
    const CVec kern = (zeta - C.nodes.array()).square().inverse().matrix();
    const cplx integral = contour_integral(theta.cwiseProduct(kern), C);
    return t_sq / (t_q * t_q) * t_1 * std::exp(integral);
}

}  // namespace kdv
