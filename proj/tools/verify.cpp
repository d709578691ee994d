#include "verify.hpp"

#include <cmath>
#include <random>

#include "kdv/conformal.hpp"
#include "kdv/hardy.hpp"
#include "kdv/oracle.hpp"

namespace kdv::cli {

using nlohmann::json;

namespace {

struct Report {
    json checks = json::array();
    bool pass = true;

    void add(const std::string& name, double value, double tol, bool below = true) {
        const bool ok = std::isfinite(value) && (below ? value < tol : value > tol);
        checks.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", ok}});
        pass = pass && ok;
    }
    void flag(const std::string& name, bool ok, const std::string& note = "") {
        json c{{"name", name}, {"pass", ok}};
        if (!note.empty()) c["note"] = note;
        checks.push_back(c);
        pass = pass && ok;
    }
};

std::vector<cplx> minus_points(const Contour& C, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r(1.5 * C.c, 6.0 * C.c), th(-pi, pi);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < count) {
        const cplx z = std::polar(r(rng), th(rng));
        if (!C.inside(z) && C.distance(z) > 0.25 * C.c) pts.push_back(z);
    }
    return pts;
}

void suite_projections(const Model& M, const RunConfig& cfg, Report& R) {
    const ContourPtr& C = M.contour;
    const cplx zeta(3.0 * cfg.c, 0.5), inside(0.0, 0.3);
    BoundaryFunction fp{C, CVec(C->size()), Space::HPlus, 0};
    BoundaryFunction fm{C, CVec(C->size()), Space::HMinus, 0};
    for (int j = 0; j < C->size(); ++j) {
        fp.values(j) = std::pow(C->nodes(j) - zeta, -8);
        fm.values(j) = std::pow(C->nodes(j) - inside, -8);
    }
    R.add("plus_defect((z-zeta)^-8)", plus_defect(fp), 1e-4);
    R.add("minus_defect((z-inside)^-8)", minus_defect(fm), 1e-4);
    const cplx z(0.0, 0.2);
    R.add("cauchy reproduces H+ function", std::abs(cauchy(fp.values, *C, z) - std::pow(z - zeta, -8)) /
                                               std::abs(std::pow(z - zeta, -8)), 1e-6);
}

void suite_toeplitz(const Model& M, const RunConfig& cfg, Report& R) {
    const VectorSymbol F = free_symbol(M.contour, cfg.L);
    const CMat T = assemble_toeplitz(F);
    R.add("T(free) = I", (T - CMat::Identity(T.rows(), T.cols())).cwiseAbs().maxCoeff(), 1e-10);
    R.flag("symbol realness", !M.m.real || realness(M.symbol, 1e-10));
    R.add("symbol decay |z^L a~|", decay_report(M.symbol), 1e6);
    const auto cd = characteristic_functions(M.symbol, cfg.cond_max);
    const MFunction mr = m_function(cd);
    double err = 0.0;
    for (cplx z : minus_points(*M.contour, 10, cfg.seed)) err = std::max(err, std::abs(mr(z) - M.m(z)));
    R.add("m round trip on D-", err, 1e-6);
    R.add("solve residual", cd->residual, 1e-10);
}

void suite_tau(const Model& M, const RunConfig& cfg, Report& R) {
    const VectorSymbol F = free_symbol(M.contour, cfg.L);
    double free_err = 0.0;
    for (const GroupElement& g : {from_rational(q_factor(2.0 * cfg.c)), from_rational(p_factor(3.0 * cfg.c)),
                                  exp_poly({0.0, 0.3, 0.0, 0.05})})
        free_err = std::max(free_err, std::abs(tau_det2(F, g, cfg.cond_max).det - 1.0));
    R.add("tau of free symbol = 1", free_err, 1e-8);
    const auto cd = characteristic_functions(M.symbol, cfg.cond_max);
    double rel = 0.0;
    for (const RationalFactor& r : {q_factor(2.0 * cfg.c), q_factor(cplx(1.5 * cfg.c, 2.0 * cfg.c)),
                                    q_factor(2.0 * cfg.c) * q_factor(-3.0 * cfg.c)}) {
        const cplx closed = tau_rational(*cd, r);
        const cplx det = tau_det2(M.symbol, from_rational(r), cfg.cond_max).det;
        rel = std::max(rel, std::abs(det - closed) / std::abs(closed));
    }
    R.add("tau closed form vs determinant", rel, 1e-6);
    if (M.m.real) {
        const PositivityReport P = positivity_gate(M.symbol, 40, cfg.seed);
        R.add("positivity gate min tau", P.min_tau, 0.0, false);
    }
}

void suite_darboux(const Model& M, const RunConfig& cfg, Report& R) {
    const cplx zeta(2.0 * cfg.c, 0.7 * cfg.c), eta(2.5 * cfg.c, -0.4 * cfg.c);
    const GroupElement g = from_rational(q_factor(zeta) * p_factor(eta));
    const VectorSymbol ga = scale_symbol(M.symbol, sample(g, M.contour->nodes));
    const MFunction mg = m_function(characteristic_functions(ga, cfg.cond_max));
    const MFunction dd = darboux(M.m, zeta, eta);
    double err = 0.0;
    for (cplx z : minus_points(*M.contour, 10, cfg.seed + 1)) err = std::max(err, std::abs(mg(z) - dd(z)));
    R.add("m of q_zeta p_eta a vs d_zeta d_eta m", err, 1e-6);
}

void suite_flow(const Model& M, const RunConfig& cfg, Report& R) {
    double err = 0.0;
    for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
        const PotentialPoint p = kdv_potential(M.symbol, identity_element(), x, cfg.cond_max);
        err = std::max(err, std::abs(p.q - M.potential.q(x)));
    }
    R.add("q(0, x) reproduces the potential", err, cfg.tol_q);
    const double dx = 0.05;
    std::vector<std::vector<cplx>> s(3);
    for (int j = 0; j < 9; ++j) {
        const PotentialPoint p = kdv_potential(M.symbol, identity_element(), -0.2 + j * dx, cfg.cond_max);
        for (int k = 0; k < 3 && k < static_cast<int>(p.s.size()); ++k) s[k].push_back(p.s[k]);
    }
    if (cfg.L >= 4) R.add("recurrence residual k=1", recurrence_residual(s, dx, 1), 1e-4);
}

void suite_conformal(Report& R) {
    for (int k = 1; k <= 3; ++k) {
        const ConformalInverse inv = phi_k_inverse(k);
        const ConformalFit f = fit_inverse_constants(inv);
        R.add("g1(inf) k=" + std::to_string(k), std::abs(f.g1_inf + 1.0 / (k * k - 0.25)), 1e-8);
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        R.add("g2(inf) k=" + std::to_string(k), std::abs(f.g2_inf + 2.0 * sgn * conformal_a(k)), 1e-8);
        double inv_err = 0.0;
        for (cplx w : {cplx(50.0, 10.0), cplx(-30.0, 40.0), cplx(80.0, -5.0)})
            inv_err = std::max(inv_err, std::abs(phi_k(inv(w), k) - w) / std::abs(w));
        R.add("phi_k(phi_k^{-1}(w)) = w, k=" + std::to_string(k), inv_err, 1e-10);
    }
    const auto x = invert_series(SeriesInZInverse<Rational>{{Rational(1, 3), Rational(-2, 5), Rational(7, 4)}}, 3);
    const Rational a1(1, 3), a2(-2, 5), a3(7, 4);
    R.flag("series inversion x1..x3 exact",
           x.coef[0] == -a1 && x.coef[1] == -a2 && x.coef[2] == -a1 * a1 - a3);
}

void suite_oracle(const Model& M, const RunConfig& cfg, Report& R) {
    const PeriodizedField q0 = periodize([](double x) { return -2.0 / std::pow(std::cosh(x), 2); });
    const PeriodizedField q1 = kdv_reference_integrate(q0, 0.5, 1e-4);
    double err = 0.0;
    for (int j = 0; j < q1.size(); ++j)
        err = std::max(err, std::abs(q1.samples[j] + 2.0 / std::pow(std::cosh(q1.x(j) + 0.5), 2)));
    R.add("reference integrator traveling wave", err, 1e-6);
    R.add("reference integrator mass drift", std::abs(q1.mass() - q0.mass()), 1e-8);
    const double dx = 0.1, x0 = 0.3;
    double res = 0.0;
    for (cplx z : {cplx(2.0 * cfg.c, 0.5), cplx(-2.5 * cfg.c, 1.0)}) {
        std::vector<cplx> f;
        for (int j = 0; j < 9; ++j) f.push_back(baker_akhiezer(M.symbol, identity_element(), x0 + j * dx, z));
        res = std::max(res, schrodinger_residual(f, x0, dx, M.potential.q, z));
    }
    R.add("Schrodinger residual of the Baker-Akhiezer function", res, 1e-5);
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"projections", "toeplitz", "tau",    "darboux",
                                                "flow",        "conformal", "oracle", "all"};
    return names;
}

json run_verify(const RunConfig& cfg, const std::string& suite) {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw ConfigError("unknown suite '" + suite + "'");
    Report R;
    auto want = [&](const char* s) { return suite == s || suite == "all"; };
    if (suite == "conformal") {
        suite_conformal(R);
    } else {
        const Model M = build_model(cfg);
        if (want("projections")) suite_projections(M, cfg, R);
        if (want("toeplitz")) suite_toeplitz(M, cfg, R);
        if (want("tau")) suite_tau(M, cfg, R);
        if (want("darboux")) suite_darboux(M, cfg, R);
        if (want("flow")) suite_flow(M, cfg, R);
        if (want("conformal")) suite_conformal(R);
        if (want("oracle")) suite_oracle(M, cfg, R);
    }
    return json{{"suite", suite}, {"version", version()}, {"config_hash", cfg.hash}, {"checks", R.checks},
                {"pass", R.pass}};
}

}  // namespace kdv::cli
