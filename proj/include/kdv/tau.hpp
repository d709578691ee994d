#pragma once

#include <cstdint>

#include "kdv/group.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

struct TauValue {
    cplx det2 = 1.0;    // det(I + A)·exp(−tr A)
    cplx det = 1.0;     // det(I + A)
    cplx trace = 0.0;   // tr A
    cplx log_det = 0.0;
};

// A = g^{-1}T(g a)T(a)^{-1} − I on the discrete space, with g^{-1}T(g a) from
// assemble_relative. The GroupElement form uses the exact g′/g.
TauValue tau_det2(const VectorSymbol& a, const GroupElement& g, double cond_max = default_cond_max);
TauValue tau_det2(const VectorSymbol& a, const CVec& g, double cond_max = default_cond_max);
TauValue tau_det2(const VectorSymbol& a, const CVec& g, const CVec& dlog_g, double cond_max = default_cond_max);

// Closed forms for rational r of order 0 (simple zeros and poles) and for
// one or two poles without zeros.
cplx tau_rational(const CharacteristicData& cd, const RationalFactor& r);

struct CocycleReport {
    cplx lhs = 0.0;
    cplx rhs = 0.0;
    cplx E = 0.0;
    cplx plain_lhs = 0.0;
    cplx plain_rhs = 0.0;
};

CocycleReport cocycle_check(const VectorSymbol& a, const GroupElement& g1, const GroupElement& g2);

struct PositivityReport {
    int trials = 0;
    double min_tau = 0.0;
    double max_imag = 0.0;
    int violations = 0;
    int worst_type = 0;
};

PositivityReport positivity_gate(const VectorSymbol& a, int trials, std::uint64_t seed);

// m′_{g a}(ζ) from tau values; the double pole is a Richardson-extrapolated
// confluent limit of q_ζ q_{ζ+ε}.
cplx m_prime_via_tau(const VectorSymbol& a, const GroupElement& g, cplx zeta, double eps = 1e-4);

}  // namespace kdv
