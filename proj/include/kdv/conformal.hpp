#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kdv/types.hpp"

namespace kdv {

using Rational = boost::multiprecision::cpp_rational;

// Σ a_j s^{−j}, coef[j−1] = a_j
template <class T>
struct SeriesInZInverse {
    std::vector<T> coef;
    bool real = true;
};

// Coefficients x_j of G with s = t + G(t) solving t = s + F(s).
template <class T>
SeriesInZInverse<T> invert_series(const SeriesInZInverse<T>& F, int order);

double conformal_a(int k);  // √π Γ(k) / (2 Γ(k + 3/2))
double conformal_b(int k);

// Polynomial p of the closed form, exact coefficients p[0..k].
std::vector<Rational> conformal_p(int k);

cplx psi_k(cplx z, int k);
cplx phi_k(cplx z, int k);

// F(s) = ψ_k(s²) − s as an exact series in s^{−1}.
SeriesInZInverse<Rational> conformal_F(int k, int order);

struct ConformalInverse {
    int k = 1;
    int order = 0;
    SeriesInZInverse<Rational> G;
    double g1_inf = 0.0;  // from the series
    double g2_inf = 0.0;

    cplx seed(cplx w) const;
    cplx operator()(cplx w) const;  // Newton-refined
};

ConformalInverse phi_k_inverse(int k, int order = 24);

struct ConformalFit {
    double g1_inf = 0.0;
    double g2_inf = 0.0;
    double residual = 0.0;
};

// g₁(∞), g₂(∞) from Newton-refined inverse values on the circle |w| = radius.
ConformalFit fit_inverse_constants(const ConformalInverse& inv, double radius = 25.0, int terms = 16);

}  // namespace kdv
