#pragma once

#include <functional>
#include <vector>

#include "kdv/types.hpp"

namespace kdv {

struct PeriodizedField {
    double length = 80.0;  // samples at x_j = −length/2 + j·length/N
    std::vector<double> samples;

    int size() const { return static_cast<int>(samples.size()); }
    double dx() const { return length / size(); }
    double x(int j) const { return -0.5 * length + j * dx(); }
    double mass() const;
    double operator()(double x) const;  // trigonometric interpolant
};

std::vector<double> sample_at(const PeriodizedField& f, const std::vector<double>& xs);

PeriodizedField periodize(const std::function<double(double)>& q, double length = 80.0, int count = 2048);

struct IntegratorOptions {
    double edge_tol = 1e-10;
    double blowup = 1e6;
};

// q_t = ¼ q_xxx − (3/2) q q_x, Fourier in x, integrating-factor RK4 in t.
PeriodizedField kdv_reference_integrate(const PeriodizedField& q0, double T, double dt,
                                        const IntegratorOptions& opt = {});

// Snapshots at every time in `times` (ascending, starting at or after 0).
std::vector<PeriodizedField> kdv_reference_trajectory(const PeriodizedField& q0, const std::vector<double>& times,
                                                      double dt, const IntegratorOptions& opt = {});

// max interior |−f″ + q f + z² f| / max|f| on the uniform grid x0 + j·dx.
double schrodinger_residual(const std::vector<cplx>& f, double x0, double dx, const std::function<double(double)>& q,
                            cplx z);

// Sixth-order central second derivative at interior points (3 ≤ j < n−3), zero elsewhere.
std::vector<cplx> second_derivative6(const std::vector<cplx>& f, double dx);

}  // namespace kdv
