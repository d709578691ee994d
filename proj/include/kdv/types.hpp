#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kdv {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using CFun = std::function<cplx(cplx)>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx two_pi_i{0.0, 2.0 * pi};

// Raised when T(a) is numerically singular (tau close to zero).
class FlowSingularity : public std::runtime_error {
public:
    FlowSingularity(const std::string& what, double cond)
        : std::runtime_error(what), cond_(cond) {}
    double cond() const { return cond_; }

private:
    double cond_;
};

}  // namespace kdv
