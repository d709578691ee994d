#include "doctest.h"
#include "fixtures.hpp"

#include "kdv/hardy.hpp"

using namespace kdv;

namespace {

BoundaryFunction pole8(const ContourPtr& C, cplx zeta, int N = 0) {
    BoundaryFunction f;
    f.contour = C;
    f.values = (C->nodes.array() - zeta).pow(-8.0).matrix();
    f.N = N;
    return f;
}

}  // namespace

TEST_CASE("plus projection keeps functions holomorphic in D+") {
    const ContourPtr C = fx::static_contour();
    const cplx zeta(2.5, 0.5);
    const BoundaryFunction f = pole8(C, zeta);
    CHECK(plus_defect(f) < 1e-4);
    const CVec p = project_boundary(f, Side::Plus);
    CHECK(l2_norm(p - f.values, *C) / l2_norm(f.values, *C) < 1e-4);
    for (cplx z : {cplx(0.2, 0.0), cplx(0.1, 2.0), cplx(-0.4, -1.0)})
        CHECK(std::abs(project(f, Side::Plus, z) - std::pow(z - zeta, -8)) < 1e-7 * std::abs(std::pow(z - zeta, -8)));
}

TEST_CASE("plus projection annihilates functions holomorphic in D-") {
    const ContourPtr C = fx::static_contour();
    const BoundaryFunction f = pole8(C, cplx(0.2, 0.1));
    CHECK(minus_defect(f) < 1e-4);
    const CVec m = project_boundary(f, Side::Minus);
    CHECK(l2_norm(m - f.values, *C) / l2_norm(f.values, *C) < 1e-4);
    const cplx z(3.0, 1.0);
    CHECK(std::abs(project(f, Side::Minus, z) - std::pow(z - cplx(0.2, 0.1), -8)) < 1e-10);
}

TEST_CASE("weighting by the base point handles slow decay") {
    const ContourPtr C = fx::static_contour();
    BoundaryFunction f;
    f.contour = C;
    const cplx zeta(2.0, -1.0);
    f.values = (C->nodes.array() - zeta).inverse().matrix();
    const cplx z(0.3, 0.5);
    double last = 1.0;
    for (int N : {2, 4, 6}) {
        f.N = N;
        const double err = std::abs(project(f, Side::Plus, z) - 1.0 / (z - zeta));
        CHECK(err < last);
        last = err;
    }
    CHECK(last < 1e-6);
}

TEST_CASE("projection refuses points on the wrong side") {
    const BoundaryFunction f = pole8(fx::static_contour(), cplx(2.5, 0.5));
    CHECK_THROWS_AS(project(f, Side::Plus, 3.0), std::domain_error);
    CHECK_THROWS_AS(project(f, Side::Minus, 0.0), std::domain_error);
    CHECK_THROWS_AS(project(f, Side::Plus, cplx(1.1, 0.0)), std::domain_error);
}

TEST_CASE("even and odd parts") {
    const ContourPtr C = fx::flow_contour();
    const CVec v = (C->nodes.array() * 0.7).exp().matrix().cwiseProduct((C->nodes.array() - 4.0).inverse().matrix());
    const auto [e, o] = even_odd_split(v, *C);
    CHECK((e + o - v).cwiseAbs().maxCoeff() < 1e-14);
    for (int j = 0; j < C->size(); ++j) {
        CHECK(std::abs(e(j) - e(C->neg[j])) < 1e-14);
        CHECK(std::abs(o(j) + o(C->neg[j])) < 1e-14);
    }
}

TEST_CASE("Cauchy integral reproduces interior values") {
    const ContourPtr C = fx::static_contour();
    const cplx eta(-3.0, 2.0);
    const CVec v = (C->nodes.array() - eta).pow(-8.0).matrix();
    const cplx z(0.5, -0.5);
    CHECK(std::abs(cauchy(v, *C, z) - std::pow(z - eta, -8)) < 1e-5 * std::abs(std::pow(z - eta, -8)));
}
