#pragma once

#include <memory>
#include <vector>

#include "kdv/types.hpp"

namespace kdv {

// Truncated discretization of C = {±ω(y) + iy}, oriented anticlockwise
// around D₊. Nodes [0, half) lie on the right branch going up, nodes
// [half, 2 half) are their negatives (left branch going down).
struct Contour {
    int n = 1;
    double c = 1.0;
    double y_max = 15.0;
    double u_max = 3.5;
    double scale = 1.0;
    double h = 0.0;
    int half = 0;
    CVec nodes;    // λ_j
    CVec weights;  // h·dλ/du
    CVec dlam;     // dλ/du
    CVec d2lam;    // d²λ/du²
    std::vector<int> neg;   // index of −λ_j
    std::vector<int> conj;  // index of conj(λ_j)
    cplx end_top;     // right branch at u = u_max + h/2
    cplx end_bottom;  // right branch at u = −u_max − h/2

    int size() const { return static_cast<int>(nodes.size()); }
    double omega(double y) const;
    bool inside(cplx z) const;
    double distance(cplx z) const;
    double dist_min() const { return 0.05 * c * scale; }

    // Boundary value of 𝔭₊ acting on node samples of decaying functions.
    const CMat& boundary_plus() const { return *kplus; }

    std::shared_ptr<const CMat> kplus;
};

using ContourPtr = std::shared_ptr<const Contour>;

ContourPtr build_contour(int n, double c, double y_max, int node_count, double u_max = 3.5);
ContourPtr scale_contour(const Contour& contour, double sigma);

// (1/2πi) Σ w_j s_j
cplx contour_integral(const CVec& samples, const Contour& contour);

// (1/2πi) ∫_C dλ/(λ − z) with the truncated tails added in closed form.
cplx residue_indicator(const Contour& contour, cplx z);

// Largest |s_j·dλ/du| over the two nodes nearest each truncation end.
double tail_magnitude(const CVec& samples, const Contour& contour);

// Finite-difference first derivative in the parameter u (order 6),
// one-sided stencils near the ends of a branch.
Eigen::MatrixXd fd_first_derivative(int m, double h, int order = 6);

}  // namespace kdv
