#pragma once

#include <vector>

#include "kdv/types.hpp"

namespace kdv {

// r(z) = Π(1 − z/η_j) / Π(1 − z/ζ_j), zeros η_j and poles ζ_j in D₋.
struct RationalFactor {
    std::vector<cplx> zeros;
    std::vector<cplx> poles;

    int order() const { return static_cast<int>(zeros.size()) - static_cast<int>(poles.size()); }
    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    RationalFactor operator*(const RationalFactor& o) const;
    RationalFactor inverse() const { return {poles, zeros}; }
    bool is_real(double tol = 1e-12) const;
};

RationalFactor q_factor(cplx zeta);  // (1 − z/ζ)^{−1}
RationalFactor p_factor(cplx eta);   // 1 + z/η

// g(z) = r(z)·exp(h(z)), h real odd polynomial with h[k] the z^k coefficient.
struct GroupElement {
    RationalFactor r;
    std::vector<double> h;

    cplx exponent(cplx z) const;
    cplx operator()(cplx z) const { return r(z) * std::exp(exponent(z)); }
    int degree() const;
    GroupElement operator*(const GroupElement& o) const;
};

GroupElement identity_element();
GroupElement e_tx(double t, double x);  // exp(xz + tz³)
GroupElement from_rational(const RationalFactor& r);
GroupElement exp_poly(const std::vector<double>& h);

CVec sample(const GroupElement& g, const CVec& z);
CVec log_derivative(const GroupElement& g, const CVec& z);  // g′/g

}  // namespace kdv
