#include "doctest.h"
#include "fixtures.hpp"

using namespace kdv;

TEST_CASE("static soliton profile") {
    const VectorSymbol& a = fx::soliton();
    for (double x : {-2.0, -0.5, 0.0, 0.8, 3.0}) {
        const PotentialPoint p = kdv_potential(a, identity_element(), x);
        CHECK(std::abs(p.q + 2.0 * fx::sech2(x)) < 1e-4);
        CHECK(std::abs(p.q_imag) < 1e-8);
        CHECK(p.residual < 1e-10);
    }
}

TEST_CASE("free symbol gives the zero field") {
    const VectorSymbol a = free_symbol(fx::flow_contour(), 4);
    const FlowResult R = kdv_solution_grid(a, {0, 0, 0, 1}, {0.0, 0.5}, {-2.0, 0.0, 2.0});
    CHECK(R.q.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(R.singular_count == 0);
}

TEST_CASE("translation in t") {
    const VectorSymbol& a = fx::soliton3();
    const FlowResult R = kdv_solution_grid(a, {0, 0, 0, 1}, {0.3}, {-1.0, 0.0, 1.0}, default_cond_max, 2);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(R.q(0, j) + 2.0 * fx::sech2(R.x[j] + 0.3)) < 1e-3);
}

TEST_CASE("threaded grid matches the serial grid") {
    const VectorSymbol& a = fx::soliton();
    const std::vector<double> xs{-1.0, -0.3, 0.4, 1.5};
    const FlowResult A = kdv_solution_grid(a, {0, 1}, {0.0}, xs, default_cond_max, 1, true);
    const FlowResult B = kdv_solution_grid(a, {0, 1}, {0.0}, xs, default_cond_max, 3, true);
    CHECK((A.q - B.q).cwiseAbs().maxCoeff() == 0.0);
    CHECK((A.log_tau - B.log_tau).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("flow degree checks") {
    CHECK_THROWS_AS(kdv_solution_grid(fx::soliton(), {0, 0, 0, 1}, {0.0}, {0.0}), std::invalid_argument);
    const VectorSymbol a = symbol_from_m(soliton_m(1.0), 3, fx::flow_contour());
    CHECK_THROWS_AS(kdv_solution_grid(a, {0, 0, 0, 1}, {0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(exp_poly({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("tau representation of the soliton") {
    // τ ∝ cosh x up to an exponential of a linear function
    const VectorSymbol& a = fx::soliton();
    const double x = 0.6;
    CHECK(tau_representation_q(a, identity_element(), x, 1e-3) == doctest::Approx(-2.0 * fx::sech2(x)).epsilon(1e-4));
    const double l0 = log_tau_x(a, identity_element(), 0.0).real();
    const double l1 = log_tau_x(a, identity_element(), 1.0).real();
    const double lm = log_tau_x(a, identity_element(), -1.0).real();
    CHECK((l1 + lm - 2.0 * l0) == doctest::Approx(2.0 * std::log(std::cosh(1.0))).epsilon(1e-6));
}

TEST_CASE("Baker-Akhiezer function of the soliton") {
    // f = e^{-xz}(1 + tanh(x)/z)
    const VectorSymbol& a = fx::soliton();
    for (cplx z : fx::outer_points(*a.contour, 4, 12, 1.5, 3.0)) {
        const double x = 0.4;
        const cplx f = baker_akhiezer(a, identity_element(), x, z);
        const cplx expect = std::exp(-x * z) * (1.0 + std::tanh(x) / z);
        CHECK(std::abs(f - expect) < 1e-7 * std::abs(expect));
    }
}

TEST_CASE("recurrence residual needs a stencil") {
    CHECK_THROWS_AS(recurrence_residual({{1.0, 2.0}}, 0.1, 1), std::invalid_argument);
}

TEST_CASE("rational approximation of exp(h)") {
    const ContourPtr C = build_contour(3, 1.05, 4.0, 200, 2.0);
    const RationalApprox r2 = rational_approx_exp({0, 0, 0, 0.05}, 2, *C);
    const RationalApprox r8 = rational_approx_exp({0, 0, 0, 0.05}, 8, *C);
    CHECK(r8.sup_error < r2.sup_error);
    CHECK_THROWS_AS(rational_approx_exp({0, 0, 0, 0.05}, 0, *C), std::invalid_argument);
}
