#pragma once

#include <string>
#include <vector>

#include "kdv/contour.hpp"
#include "kdv/mfunction.hpp"

namespace kdv {

struct Potential {
    std::string kind;                     // soliton, sech2_sum, gaussian_bump, tabulated, zero
    std::function<double(double)> q;
    std::function<cplx(cplx)> q_complex;  // analytic continuation when available
    double support = 10.0;                // q ≈ 0 for |x| > support
    double lambda0 = 0.0;
    int smoothness = 32;
};

Potential zero_potential();
Potential soliton_potential(double kappa, double x0 = 0.0);
// q = Σ −2κ_i² sech²(κ_i (x − x_i))
Potential sech2_sum(const std::vector<double>& kappa, const std::vector<double>& shift);
// q = A exp(−(x − x0)²/σ²)
Potential gaussian_bump(double amplitude = 1.0, double sigma = 1.0, double x0 = 0.0);
Potential tabulated_potential(const std::vector<double>& x, const std::vector<double>& q);
Potential tabulated_from_csv(const std::string& path);

MFunction soliton_m(double kappa);
MFunction free_m();

struct ShootingOptions {
    double X = 0.0;    // 0 picks a cutoff from the support
    double rtol = 1e-11;
    double atol = 1e-13;
};

// m(z) = −f′(0)/f(0) for the solution decaying at +∞ (Re z > 0) or −∞ (Re z < 0).
cplx weyl_from_ode(const Potential& q, cplx z, const ShootingOptions& opt = {});

struct JostData {
    std::vector<double> f;  // f_1 .. f_n at x
    std::vector<double> c;  // c_1 .. c_n at x
};

// Taylor coefficients of q at x0 up to order n.
std::vector<double> taylor_coefficients(const Potential& q, double x0, int n);

JostData jost_coefficients(const Potential& q, double x, int n);

// m_k = c_{k+1}(0), k = 1..count
std::vector<double> asymptotic_coefficients(const Potential& q, int count);

// MFunction backed by shooting, memoized on exact arguments.
MFunction weyl_mfunction(const Potential& q, int coefficient_count, const ShootingOptions& opt = {});

struct AsymptoticFit {
    std::vector<double> coef;  // fitted m_k
    double residual = 0.0;
};

AsymptoticFit fit_asymptotics(const MFunction& m, int order, const Contour& contour, int points = 40);

}  // namespace kdv
