#pragma once

#include <vector>

#include "kdv/spectral.hpp"
#include "kdv/tau.hpp"

namespace kdv {

struct PotentialPoint {
    double x = 0.0;
    double q = 0.0;
    double q_imag = 0.0;
    cplx kappa1 = 0.0;
    std::vector<cplx> s;   // s_1 .. s_{L−1}
    std::vector<cplx> ds;  // x-derivatives
    double cond = 0.0;
    double residual = 0.0;
};

// q(x) = −2 ∂ₓκ₁(e_x g a) with the analytic x-derivative of the solve.
PotentialPoint kdv_potential(const VectorSymbol& a, const GroupElement& g, double x,
                             double cond_max = default_cond_max);

enum class PointStatus { Ok, Singular };

struct FlowResult {
    std::vector<double> t, x;
    Eigen::MatrixXd q;       // q(t_i, x_j), NaN where singular
    Eigen::MatrixXd cond;
    Eigen::MatrixXd residual;
    Eigen::MatrixXcd kappa1;
    Eigen::MatrixXcd log_tau;  // log τ_a(e_x g), filled when requested
    std::vector<std::vector<PointStatus>> status;
    int singular_count = 0;
};

// h is an odd real polynomial; g = exp(t·h) at each grid time.
FlowResult kdv_solution_grid(const VectorSymbol& a, const std::vector<double>& h, const std::vector<double>& t_grid,
                             const std::vector<double>& x_grid, double cond_max = default_cond_max,
                             int threads = 1, bool with_tau = false);

cplx baker_akhiezer(const VectorSymbol& a, const GroupElement& g, double x, cplx z);

// s[k][j] = s_{k+1}(x_j) on a uniform grid; max residual of
// s_k″ + 2 s₁′ s_k − 2 s_{k+1}′ over k ≤ k_max and interior points.
double recurrence_residual(const std::vector<std::vector<cplx>>& s, double dx, int k_max);

double tau_representation_q(const VectorSymbol& a, const GroupElement& g, double x, double step);
cplx log_tau_x(const VectorSymbol& a, const GroupElement& g, double x);

struct RationalApprox {
    RationalFactor r;
    double sup_error = 0.0;
};

RationalApprox rational_approx_exp(const std::vector<double>& h, int k, const Contour& contour);

}  // namespace kdv
