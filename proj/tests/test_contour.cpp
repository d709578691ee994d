#include "doctest.h"
#include "fixtures.hpp"

using namespace kdv;

TEST_CASE("contour symmetry maps") {
    for (const ContourPtr& C : {fx::static_contour(), fx::flow_contour()}) {
        for (int j = 0; j < C->size(); ++j) {
            CHECK(std::abs(C->nodes(C->neg[j]) + C->nodes(j)) < 1e-12);
            CHECK(std::abs(C->nodes(C->conj[j]) - std::conj(C->nodes(j))) < 1e-12);
        }
    }
}

TEST_CASE("inside and outside") {
    const Contour& C = *fx::static_contour();
    CHECK(C.inside(0.0));
    CHECK(C.inside(cplx(0.3, 5.0)));
    CHECK_FALSE(C.inside(3.0));
    CHECK_FALSE(C.inside(-3.0));
    CHECK(C.distance(3.0) == doctest::Approx(1.9).epsilon(1e-6));
}

TEST_CASE("residue indicator") {
    const Contour& C = *fx::static_contour();
    CHECK(std::abs(residue_indicator(C, 0.2) - 1.0) < 1e-5);
    CHECK(std::abs(residue_indicator(C, cplx(0.1, -3.0)) - 1.0) < 1e-5);
    CHECK(std::abs(residue_indicator(C, 2.5)) < 1e-5);
    CHECK(std::abs(residue_indicator(C, cplx(-3.0, 1.0))) < 1e-5);
}

TEST_CASE("contour integral of a rational function") {
    // Σ residues inside D+ of 1/((z-ζ)²(z-η)⁶) = −6/(ζ-η)⁷
    for (const ContourPtr& C : {fx::static_contour(), fx::flow_contour()}) {
        const cplx zeta(0.3, 0.4), eta(2.5, 0.5);
        const CVec s = ((C->nodes.array() - zeta).square() * (C->nodes.array() - eta).pow(6)).inverse().matrix();
        const cplx expect = -6.0 / std::pow(zeta - eta, 7);
        CHECK(std::abs(contour_integral(s, *C) - expect) < 1e-8 * std::abs(expect));
    }
}

TEST_CASE("finite differences are exact on low-degree polynomials") {
    const int m = 20;
    const double h = 0.1;
    const Eigen::MatrixXd D = fd_first_derivative(m, h, 6);
    Eigen::VectorXd u(m), du(m);
    for (int i = 0; i < m; ++i) {
        const double t = i * h;
        u(i) = 1.0 + t - 2.0 * t * t * t + 0.5 * std::pow(t, 6);
        du(i) = 1.0 - 6.0 * t * t + 3.0 * std::pow(t, 5);
    }
    CHECK((D * u - du).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("scaling the contour") {
    const Contour& C = *fx::static_contour();
    const ContourPtr S = scale_contour(C, 2.0);
    CHECK((S->nodes - 2.0 * C.nodes).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(S->inside(2.0));
    CHECK_FALSE(S->inside(2.5));
}

TEST_CASE("invalid contour parameters") {
    CHECK_THROWS_AS(build_contour(2, 1.0, 10.0, 400), std::invalid_argument);
    CHECK_THROWS_AS(build_contour(1, -1.0, 10.0, 400), std::invalid_argument);
    CHECK_THROWS_AS(build_contour(1, 1.0, 0.0, 400), std::invalid_argument);
    CHECK_THROWS_AS(build_contour(1, 1.0, 10.0, 402), std::invalid_argument);
    CHECK_THROWS_AS(scale_contour(*fx::static_contour(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(contour_integral(CVec::Ones(3), *fx::static_contour()), std::invalid_argument);
}
