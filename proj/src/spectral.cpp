#include "kdv/spectral.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace kdv {

CVec tail_action(const VectorSymbol& a, const CVec& w) {
    auto [we, wo] = even_odd_split(w, *a.contour);
    return a.t1().cwiseProduct(we) + a.t2().cwiseProduct(wo);
}

namespace {

cplx minus_value(const CVec& density, const Contour& C, cplx z) {
    if (C.inside(z)) throw std::domain_error("characteristic functions are evaluated on D-");
    return -cauchy(density, C, z);
}

}  // namespace

cplx CharacteristicData::phi_at(cplx z) const { return minus_value(au_tail, *a.contour, z); }

cplx CharacteristicData::psi_at(cplx z) const { return minus_value(av_tail, *a.contour, z); }

cplx CharacteristicData::delta_at(cplx z) const {
    const cplx pz = phi_at(z), pm = phi_at(-z);
    const cplx sz = psi_at(z), sm = psi_at(-z);
    return ((1.0 + pm) * (sz + z) - (1.0 + pz) * (sm - z)) / (2.0 * z);
}

cplx CharacteristicData::m_at(cplx z) const { return (z + psi_at(z)) / (1.0 + phi_at(z)) + kappa1; }

CharacteristicPtr characteristic_functions(const VectorSymbol& a, double cond_max) {
    const Contour& C = *a.contour;
    auto cd = std::make_shared<CharacteristicData>();
    cd->a = a;
    const CMat M = assemble_toeplitz(a);
    ToeplitzSolver S(M, cond_max);
    const CVec one = CVec::Ones(C.size());
    cd->u = S.solve(one);
    cd->v = S.solve(C.nodes);
    cd->cond = S.cond();
    cd->residual = std::max((M * cd->u - one).norm() / one.norm(), (M * cd->v - C.nodes).norm() / C.nodes.norm());
    auto [ue, uo] = even_odd_split(cd->u, C);
    auto [ve, vo] = even_odd_split(cd->v, C);
    cd->phi = a.a1.cwiseProduct(ue) + a.a2.cwiseProduct(uo) - one;
    cd->psi = a.a1.cwiseProduct(ve) + a.a2.cwiseProduct(vo) - C.nodes;
    cd->au_tail = a.t1().cwiseProduct(ue) + a.t2().cwiseProduct(uo);
    cd->av_tail = a.t1().cwiseProduct(ve) + a.t2().cwiseProduct(vo);
    cd->kappa1 = contour_integral(cd->au_tail, C);
    return cd;
}

MFunction m_function(const CharacteristicPtr& cd) {
    MFunction m;
    m.eval = [cd](cplx z) {
        const cplx d = 1.0 + cd->phi_at(z);
        if (std::abs(d) < 1e-14) throw std::domain_error("m-function evaluated at a zero of 1 + phi");
        return (z + cd->psi_at(z)) / d + cd->kappa1;
    };
    m.real = cd->a.real;
    m.label = "from-symbol";
    return m;
}

cplx darboux_step(const CFun& f, cplx zeta, cplx z) {
    const cplx fz = f(zeta);
    const cplx d = f(z) - fz;
    if (std::abs(d) < 1e-14) throw std::domain_error("darboux: f(z) = f(zeta)");
    return (z * z - zeta * zeta) / d - fz;
}

MFunction darboux_single(const MFunction& m, cplx zeta) {
    MFunction r;
    const CFun f = m.eval;
    r.eval = [f, zeta](cplx z) { return darboux_step(f, zeta, z); };
    r.mu0 = m.mu0;
    r.real = false;
    r.label = "d_zeta(" + m.label + ")";
    return r;
}

MFunction darboux(const MFunction& m, cplx zeta, cplx eta) {
    const CFun f = m.eval;
    const cplx f_eta_zeta = darboux_step(f, eta, zeta);
    MFunction r;
    r.eval = [f, zeta, eta, f_eta_zeta](cplx z) {
        const cplx inner = darboux_step(f, eta, z);
        const cplx d = inner - f_eta_zeta;
        if (std::abs(d) < 1e-14) throw std::domain_error("darboux: degenerate evaluation point");
        return (z * z - zeta * zeta) / d - f_eta_zeta;
    };
    r.mu0 = m.mu0;
    r.real = m.real;
    r.label = "d_zeta d_eta(" + m.label + ")";
    return r;
}

cplx weyl_sqrt(cplx z) { return std::sqrt(-z); }

WeylData reflection_data(cplx mp, cplx mm) {
    const cplx s = mp + mm;
    if (std::abs(s) == 0.0) throw std::domain_error("m+ + m- vanishes");
    WeylData w;
    w.m_plus = mp;
    w.m_minus = mm;
    w.m1 = -1.0 / s;
    w.m2 = mp * mm / s;
    w.R = (std::conj(mp) + mm) / s;
    w.xi1 = std::arg(w.m1) / pi;
    w.xi2 = std::arg(w.m2) / pi;
    return w;
}

WeylData weyl_and_reflection(const MFunction& m, cplx z) {
    if (!(z.imag() > 0.0)) throw std::domain_error("weyl_and_reflection expects z in the upper half-plane");
    const cplx s = weyl_sqrt(z);
    return reflection_data(-m(s), m(-s));
}

std::pair<cplx, cplx> herglotz_from_xi(const XiData& d, cplx z) {
    using boost::math::quadrature::gauss_kronrod;
    auto integral = [&](const std::function<double(double)>& xi) {
        auto part = [&](double a, double b, bool im) {
            auto f = [&](double lam) {
                const double ind = lam > 0.0 ? 0.5 : 0.0;
                const double x = xi(lam);
                if (x < 0.0 || x > 1.0) throw std::domain_error("xi outside [0,1]");
                const cplx v = (x - ind) / (lam - z);
                return im ? v.imag() : v.real();
            };
            return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12);
        };
        cplx s = 0.0;
        std::vector<double> cuts{d.lambda0};
        if (d.lambda0 < 0.0) cuts.push_back(0.0);
        for (double p = 1.0; p < d.lambda_max; p *= 4.0)
            if (p > cuts.back()) cuts.push_back(p);
        cuts.push_back(d.lambda_max);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            s += cplx(part(cuts[i], cuts[i + 1], false), part(cuts[i], cuts[i + 1], true));
        return s;
    };
    const cplx r = std::sqrt(-z);
    const cplx m1 = std::exp(integral(d.xi1)) / (2.0 * r);
    const cplx m2 = -0.5 * r * (d.lambda1 - z) / (-z) * std::exp(integral(d.xi2));
    return {m1, m2};
}

double herglotz_ratio(const MFunction& m, cplx z) { return m(z).imag() / z.imag(); }

}  // namespace kdv
