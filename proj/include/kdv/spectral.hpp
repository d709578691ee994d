#pragma once

#include <memory>

#include "kdv/hardy.hpp"
#include "kdv/toeplitz.hpp"

namespace kdv {

struct CharacteristicData {
    VectorSymbol a;
    CVec u, v;          // T(a)^{-1}1, T(a)^{-1}z at the nodes
    CVec phi, psi;      // boundary values of φ, ψ
    CVec au_tail;       // ã·u = ã₁u_e + ã₂u_o
    CVec av_tail;       // ã·v
    cplx kappa1 = 0.0;
    double cond = 0.0;
    double residual = 0.0;

    cplx phi_at(cplx z) const;
    cplx psi_at(cplx z) const;
    cplx delta_at(cplx z) const;
    cplx m_at(cplx z) const;
};

using CharacteristicPtr = std::shared_ptr<const CharacteristicData>;

// ã·w for a node vector w.
CVec tail_action(const VectorSymbol& a, const CVec& w);

CharacteristicPtr characteristic_functions(const VectorSymbol& a, double cond_max = default_cond_max);

MFunction m_function(const CharacteristicPtr& cd);

// (d_ζ f)(z) = (z² − ζ²)/(f(z) − f(ζ)) − f(ζ)
cplx darboux_step(const CFun& f, cplx zeta, cplx z);
MFunction darboux_single(const MFunction& m, cplx zeta);  // unvalidated in general
MFunction darboux(const MFunction& m, cplx zeta, cplx eta);

struct WeylData {
    cplx m_plus, m_minus, m1, m2, R, xi1, xi2;
};

// √(−z) with Re > 0 and Im < 0 on ℂ₊.
cplx weyl_sqrt(cplx z);
WeylData reflection_data(cplx m_plus, cplx m_minus);
WeylData weyl_and_reflection(const MFunction& m, cplx z);

struct XiData {
    std::function<double(double)> xi1, xi2;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda_max = 1e3;
};

std::pair<cplx, cplx> herglotz_from_xi(const XiData& data, cplx z);

double herglotz_ratio(const MFunction& m, cplx z);  // Im m(z) / Im z

}  // namespace kdv
