#pragma once

#include <utility>

#include "kdv/contour.hpp"

namespace kdv {

enum class Space { HPlus, HMinus, L2 };
enum class Side { Plus, Minus };

struct BoundaryFunction {
    ContourPtr contour;
    CVec values;
    Space space = Space::L2;
    int N = 0;
};

// Base point for H_N(D₊), real and in D₋.
double base_point(const Contour& contour);

double l2_norm(const CVec& values, const Contour& contour);

// Cauchy integral (1/2πi) ∫ f(λ)/(λ − z) dλ from node samples.
cplx cauchy(const CVec& values, const Contour& contour, cplx z);

// Value of 𝔭₊f or 𝔭₋f at z off the curve. For N > 0 the samples are
// divided by (λ − b)^N before integration and the factor restored at z.
cplx project(const BoundaryFunction& f, Side side, cplx z, int N = -1);

// Boundary values of 𝔭₊f / 𝔭₋f at the nodes (singularity subtraction).
CVec project_boundary(const BoundaryFunction& f, Side side, int N = -1);

std::pair<CVec, CVec> even_odd_split(const CVec& values, const Contour& contour);

// Relative size of the wrong-side projection.
double plus_defect(const BoundaryFunction& f);
double minus_defect(const BoundaryFunction& f);

}  // namespace kdv
