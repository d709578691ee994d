#pragma once

#include <string>
#include <vector>

#include "kdv/types.hpp"

namespace kdv {

// Weyl-type function m(z) = z + Σ m_k z^{−k} + ... on D₋.
struct MFunction {
    CFun eval;
    double mu0 = 0.0;
    std::vector<double> asym;  // asym[k−1] = m_k
    bool real = true;
    std::string label;

    cplx operator()(cplx z) const { return eval(z); }
};

}  // namespace kdv
