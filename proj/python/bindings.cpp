#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdv/conformal.hpp"
#include "kdv/flow.hpp"
#include "kdv/oracle.hpp"
#include "kdv/potentials.hpp"

namespace py = pybind11;
using namespace kdv;

namespace {

GroupElement group(const std::vector<cplx>& poles, const std::vector<cplx>& zeros, const std::vector<double>& h) {
    GroupElement g = identity_element();
    for (cplx z : poles) g = g * from_rational(q_factor(z));
    for (cplx z : zeros) g = g * from_rational(p_factor(z));
    if (!h.empty()) g = g * exp_poly(h);
    return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "KdV solutions from Weyl-function data via Toeplitz operators on a contour.";

    py::register_exception<FlowSingularity>(m, "FlowSingularity", PyExc_ArithmeticError);

    py::class_<Contour, std::shared_ptr<Contour>>(m, "Contour")
        .def(py::init([](int n, double c, double y_max, int nodes, double u_max) {
                 return std::const_pointer_cast<Contour>(build_contour(n, c, y_max, nodes, u_max));
             }),
             py::arg("n") = 1, py::arg("c") = 1.1, py::arg("y_max") = 15.0, py::arg("nodes") = 600,
             py::arg("u_max") = 3.5)
        .def_readonly("n", &Contour::n)
        .def_readonly("c", &Contour::c)
        .def_property_readonly("nodes", [](const Contour& C) { return C.nodes; })
        .def("inside", &Contour::inside)
        .def("__len__", &Contour::size);

    py::class_<VectorSymbol>(m, "Symbol")
        .def_readonly("L", &VectorSymbol::L)
        .def_readonly("real", &VectorSymbol::real)
        .def_property_readonly("contour", [](const VectorSymbol& a) { return std::const_pointer_cast<Contour>(a.contour); });

    m.def("soliton_symbol", [](double kappa, const std::shared_ptr<Contour>& C, int L) {
        return symbol_from_m(soliton_m(kappa), L, C);
    }, py::arg("kappa"), py::arg("contour"), py::arg("L") = 8);
    m.def("free_symbol", [](const std::shared_ptr<Contour>& C, int L) { return free_symbol(C, L); },
          py::arg("contour"), py::arg("L") = 4);
    m.def("gaussian_symbol", [](double amplitude, double sigma, double x0, const std::shared_ptr<Contour>& C, int L) {
        const Potential q = gaussian_bump(amplitude, sigma, x0);
        return symbol_from_m(weyl_mfunction(q, L), L, C);
    }, py::arg("amplitude"), py::arg("sigma"), py::arg("x0"), py::arg("contour"), py::arg("L") = 8);

    m.def("potential", [](const VectorSymbol& a, double x) { return kdv_potential(a, identity_element(), x).q; },
          py::arg("symbol"), py::arg("x"));
    m.def("solve", [](const VectorSymbol& a, const std::vector<double>& h, const std::vector<double>& t,
                      const std::vector<double>& x, int threads) {
        py::gil_scoped_release release;
        return kdv_solution_grid(a, h, t, x, default_cond_max, threads).q;
    }, py::arg("symbol"), py::arg("h"), py::arg("t"), py::arg("x"), py::arg("threads") = 1);

    m.def("m_function", [](const VectorSymbol& a, const std::vector<cplx>& z) {
        const auto cd = characteristic_functions(a);
        std::vector<cplx> out;
        for (cplx w : z) out.push_back(cd->m_at(w));
        return out;
    }, py::arg("symbol"), py::arg("z"));
    m.def("tau", [](const VectorSymbol& a, const std::vector<cplx>& poles, const std::vector<cplx>& zeros,
                    const std::vector<double>& h, double x) {
        const TauValue t = tau_det2(a, group(poles, zeros, h) * e_tx(0.0, x));
        return py::make_tuple(t.det, t.det2);
    }, py::arg("symbol"), py::arg("poles") = std::vector<cplx>{}, py::arg("zeros") = std::vector<cplx>{},
       py::arg("h") = std::vector<double>{}, py::arg("x") = 0.0);

    m.def("weyl_shooting", [](const std::function<double(double)>& q, double support, cplx z) {
        Potential p;
        p.kind = "callable";
        p.q = q;
        p.support = support;
        return weyl_from_ode(p, z);
    }, py::arg("q"), py::arg("support"), py::arg("z"));

    m.def("reference_integrate", [](const std::vector<double>& q0, double length, double T, double dt) {
        PeriodizedField f;
        f.length = length;
        f.samples = q0;
        return kdv_reference_integrate(f, T, dt).samples;
    }, py::arg("q0"), py::arg("length"), py::arg("T"), py::arg("dt") = 1e-4);

    m.def("conformal_a", &conformal_a, py::arg("k"));
    m.attr("__version__") = KDV_VERSION;
}
