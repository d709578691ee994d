#include "doctest.h"
#include "fixtures.hpp"

using namespace kdv;

TEST_CASE("closed-form potentials") {
    const Potential s = soliton_potential(1.0);
    CHECK(s.q(0.0) == doctest::Approx(-2.0));
    CHECK(soliton_potential(2.0, 1.0).q(1.0) == doctest::Approx(-8.0));
    const Potential g = gaussian_bump(1.5, 2.0, 0.5);
    CHECK(g.q(0.5) == doctest::Approx(1.5));
    CHECK(g.q(2.5) == doctest::Approx(1.5 * std::exp(-1.0)));  // exp(-(x-x0)²/σ²)
    CHECK(zero_potential().q(3.0) == 0.0);
    const Potential two = sech2_sum({1.0, 2.0}, {0.0, 0.0});
    CHECK(std::isfinite(two.q(0.0)));
    CHECK_THROWS_AS(sech2_sum({1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_bump(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(soliton_m(-1.0), std::invalid_argument);
}

TEST_CASE("shooting reproduces closed-form m-functions") {
    const Potential s = soliton_potential(1.0);
    const MFunction m = soliton_m(1.0);
    for (cplx z : {cplx(1.5, 0.5), cplx(2.0, -2.0), cplx(-1.7, 0.3)}) {
        CHECK(std::abs(weyl_from_ode(s, z) - m(z)) < 1e-8);
        CHECK(std::abs(weyl_from_ode(zero_potential(), z) - z) < 1e-10);
    }
    CHECK_THROWS_AS(weyl_from_ode(s, cplx(0.0, 1.0)), std::domain_error);
}

TEST_CASE("Taylor coefficients") {
    const Potential g = gaussian_bump(1.0, 1.0, 0.0);
    const std::vector<double> c = taylor_coefficients(g, 0.0, 4);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(c[1]) < 1e-10);
    CHECK(c[2] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(c[3]) < 1e-10);
    CHECK(c[4] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("asymptotic coefficients") {
    const std::vector<double> c = asymptotic_coefficients(soliton_potential(1.0), 6);
    const MFunction m = soliton_m(1.0);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(c[k] - m.asym[k]) < 1e-8);
    const std::vector<double> z = asymptotic_coefficients(zero_potential(), 4);
    for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("Weyl m-function of a Gaussian fits its own asymptotics") {
    const Potential g = gaussian_bump(1.0, 1.0, 0.0);
    const MFunction m = weyl_mfunction(g, 10);
    const AsymptoticFit f = fit_asymptotics(m, 8, *build_contour(1, 0.6, 15.0, 200, 3.5));
    CHECK(std::abs(f.coef[0] - m.asym[0]) < 1e-4);
    CHECK(std::abs(f.coef[1] - m.asym[1]) < 1e-3);
    CHECK(m.asym[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("tabulated potentials interpolate") {
    std::vector<double> x, q;
    for (int i = 0; i <= 400; ++i) {
        x.push_back(-10.0 + 0.05 * i);
        q.push_back(-2.0 * fx::sech2(x.back()));
    }
    const Potential t = tabulated_potential(x, q);
    for (double v : {-3.33, 0.01, 1.234}) CHECK(std::abs(t.q(v) + 2.0 * fx::sech2(v)) < 1e-4);
    CHECK_THROWS_AS(tabulated_potential({0.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS(tabulated_from_csv("/nonexistent/q.csv"));
}
