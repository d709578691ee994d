#pragma once

#include <memory>
#include <optional>

#include "kdv/contour.hpp"
#include "kdv/group.hpp"
#include "kdv/mfunction.hpp"

namespace kdv {

// Vector symbol a = (a₁, a₂) sampled on a contour, with analytic split
// a = f + ã where f is bounded analytic on D₊ and ã = O(λ^{−L}).
struct VectorSymbol {
    ContourPtr contour;
    CVec a1, a2, f1, f2;
    int L = 4;
    bool real = true;
    double split_radius = 0.0;  // pole radius P of the split, 0 if unused
    CFun f2_eval;               // f₂ off the curve, when known

    CVec t1() const { return a1 - f1; }
    CVec t2() const { return a2 - f2; }
};

struct SplitOptions {
    double radius = 0.0;  // 0 selects the radius automatically
    bool allow_experimental_l2 = false;
};

// Analytic approximant of z^{−p} on D₊ with poles at ±P of order k;
// z^{−p} − E_p(z) = O(z^{−2k−1}).
cplx split_kernel(cplx z, int p, double P, int k);

// f₂ = 1 + Σ m_k E_{k+1} for the given coefficients.
cplx split_f2(cplx z, const std::vector<double>& asym, double P, int k);

// Winding number of the sampled values along the contour.
double winding_number(const CVec& values, const Contour& contour);

VectorSymbol symbol_from_m(const MFunction& m, int L, const ContourPtr& contour, const SplitOptions& opt = {});
VectorSymbol symbol_from_samples(const ContourPtr& contour, const CVec& a1, const CVec& a2, const CVec& f1,
                                 const CVec& f2, int L, bool real);
VectorSymbol free_symbol(const ContourPtr& contour, int L = 4);

double decay_report(const VectorSymbol& a);
bool realness(const VectorSymbol& a, double tol = 1e-12);

// Matrix of T(g·a) on node samples of H_N(D₊).
CMat assemble_toeplitz(const VectorSymbol& a, const CVec& g);
CMat assemble_toeplitz(const VectorSymbol& a, const GroupElement& g);
CMat assemble_toeplitz(const VectorSymbol& a);

// K + Nyström discretization of the smooth kernel (g(λ)/g(z) − 1)/(λ − z);
// approximates g^{-1}·𝔭₊·g with an exact diagonal g′/g.
CMat conjugated_kernel(const Contour& contour, const CVec& g, const CVec& dlog_g);
// g^{-1}T(g a) on node samples, built from conjugated_kernel.
CMat assemble_relative(const VectorSymbol& a, const CVec& g, const CVec& dlog_g);
// g′/g from samples by differentiation along each branch.
CVec log_derivative(const CVec& g, const Contour& contour);

struct SolveReport {
    CVec u;
    double residual = 0.0;
    double cond = 0.0;
};

inline constexpr double default_cond_max = 1e12;

class ToeplitzSolver {
public:
    explicit ToeplitzSolver(const CMat& M, double cond_max = default_cond_max);
    CVec solve(const CVec& rhs) const;
    double cond() const { return cond_; }
    cplx log_det() const;
    const Eigen::PartialPivLU<CMat>& lu() const { return lu_; }

private:
    Eigen::PartialPivLU<CMat> lu_;
    double cond_;
};

SolveReport solve_toeplitz(const CMat& M, const CVec& rhs, double cond_max = default_cond_max);

VectorSymbol multiply_symbols(const VectorSymbol& m, const VectorSymbol& n);
VectorSymbol invert_symbol(const VectorSymbol& m);

// Multiplication by g scales both components of the symbol.
VectorSymbol scale_symbol(const VectorSymbol& a, const CVec& g);

}  // namespace kdv
