#include "kdv/flow.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>

namespace kdv {

namespace {

CVec group_with_x(const GroupElement& g, double x, const Contour& C) {
    GroupElement gx = g * e_tx(0.0, x);
    return sample(gx, C.nodes);
}

cplx relative_log_det(const VectorSymbol& a, const GroupElement& g) {
    const CVec& z = a.contour->nodes;
    const Eigen::PartialPivLU<CMat> lu(assemble_relative(a, sample(g, z), log_derivative(g, z)));
    const CMat& LU = lu.matrixLU();
    cplx ld = 0.0;
    for (Eigen::Index i = 0; i < LU.rows(); ++i) ld += std::log(LU(i, i));
    if (lu.permutationP().determinant() < 0) ld += cplx(0.0, pi);
    return ld;
}

}  // namespace

PotentialPoint kdv_potential(const VectorSymbol& a, const GroupElement& g, double x, double cond_max) {
    const Contour& C = *a.contour;
    const CVec G = group_with_x(g, x, C);
    const CVec zG = C.nodes.cwiseProduct(G);
    const CMat M = assemble_toeplitz(a, G);
    ToeplitzSolver S(M, cond_max);
    const CVec one = CVec::Ones(C.size());
    const CVec u = S.solve(one);
    const CVec du = -S.solve(assemble_toeplitz(a, zG) * u);
    const CVec tu = tail_action(a, u);
    const CVec tdu = tail_action(a, du);

    PotentialPoint p;
    p.x = x;
    p.cond = S.cond();
    p.residual = (M * u - one).norm() / one.norm();
    CVec lamk = CVec::Ones(C.size());
    for (int k = 1; k <= a.L - 1; ++k) {
        const cplx sk = contour_integral(lamk.cwiseProduct(G).cwiseProduct(tu), C);
        const cplx dsk = contour_integral(lamk.cwiseProduct(zG.cwiseProduct(tu) + G.cwiseProduct(tdu)), C);
        p.s.push_back(sk);
        p.ds.push_back(dsk);
        lamk = lamk.cwiseProduct(C.nodes);
    }
    p.kappa1 = p.s[0];
    p.q = -2.0 * p.ds[0].real();
    p.q_imag = -2.0 * p.ds[0].imag();
    return p;
}

FlowResult kdv_solution_grid(const VectorSymbol& a, const std::vector<double>& h, const std::vector<double>& t_grid,
                             const std::vector<double>& x_grid, double cond_max, int threads,
                             bool with_tau) {
    const int deg = exp_poly(h).degree();
    if (deg > a.contour->n) throw std::invalid_argument("flow degree exceeds the contour degree n");
    if (a.L < std::max(deg + 1, 3)) throw std::invalid_argument("decay order L too small for this flow");
    FlowResult R;
    R.t = t_grid;
    R.x = x_grid;
    const int nt = static_cast<int>(t_grid.size()), nx = static_cast<int>(x_grid.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    R.q = Eigen::MatrixXd::Constant(nt, nx, nan);
    R.cond = Eigen::MatrixXd::Constant(nt, nx, nan);
    R.residual = Eigen::MatrixXd::Constant(nt, nx, nan);
    R.kappa1 = Eigen::MatrixXcd::Constant(nt, nx, cplx(nan, nan));
    R.status.assign(nt, std::vector<PointStatus>(nx, PointStatus::Ok));
    std::vector<GroupElement> gs;
    for (int i = 0; i < nt; ++i) {
        std::vector<double> th(h.size());
        for (std::size_t k = 0; k < h.size(); ++k) th[k] = t_grid[i] * h[k];
        gs.push_back(exp_poly(th));
    }
    R.log_tau = Eigen::MatrixXcd::Constant(nt, nx, cplx(nan, nan));
    const cplx base = with_tau ? ToeplitzSolver(assemble_toeplitz(a), cond_max).log_det() : cplx(0.0);
    std::atomic<int> next{0}, singular{0};
    auto work = [&] {
        for (int idx = next++; idx < nt * nx; idx = next++) {
            const int i = idx / nx, j = idx % nx;
            try {
                const PotentialPoint p = kdv_potential(a, gs[i], x_grid[j], cond_max);
                R.q(i, j) = p.q;
                R.cond(i, j) = p.cond;
                R.residual(i, j) = p.residual;
                R.kappa1(i, j) = p.kappa1;
                if (with_tau) R.log_tau(i, j) = relative_log_det(a, gs[i] * e_tx(0.0, x_grid[j])) - base;
            } catch (const FlowSingularity& e) {
                R.status[i][j] = PointStatus::Singular;
                R.cond(i, j) = e.cond();
                ++singular;
            }
        }
    };
    const int workers = std::max(1, std::min(threads, nt * nx));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    R.singular_count = singular;
    return R;
}

cplx baker_akhiezer(const VectorSymbol& a, const GroupElement& g, double x, cplx z) {
    const Contour& C = *a.contour;
    const CVec G = group_with_x(g, x, C);
    const VectorSymbol ga = scale_symbol(a, G);
    const CMat M = assemble_toeplitz(ga);
    ToeplitzSolver S(M);
    const CVec u = S.solve(CVec::Ones(C.size()));
    const cplx phi = -cauchy(tail_action(ga, u), C, z);
    return std::exp(-x * z) * (1.0 + phi);
}

double recurrence_residual(const std::vector<std::vector<cplx>>& s, double dx, int k_max) {
    if (s.empty() || s[0].size() < 5) throw std::invalid_argument("recurrence grid needs at least 5 points");
    const int n = static_cast<int>(s[0].size());
    auto d1 = [&](const std::vector<cplx>& f, int j) {
        return (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * dx);
    };
    auto d2 = [&](const std::vector<cplx>& f, int j) {
        return (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]) / (12.0 * dx * dx);
    };
    double worst = 0.0;
    for (int k = 1; k <= k_max && k < static_cast<int>(s.size()); ++k) {
        const auto& sk = s[k - 1];
        const auto& sk1 = s[k];
        for (int j = 2; j < n - 2; ++j) {
            const cplx r = d2(sk, j) + 2.0 * d1(s[0], j) * sk[j] - 2.0 * d1(sk1, j);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

cplx log_tau_x(const VectorSymbol& a, const GroupElement& g, double x) {
    const cplx base = ToeplitzSolver(assemble_toeplitz(a)).log_det();
    return relative_log_det(a, g * e_tx(0.0, x)) - base;
}

double tau_representation_q(const VectorSymbol& a, const GroupElement& g, double x, double step) {
    const cplx lm = log_tau_x(a, g, x - step);
    const cplx l0 = log_tau_x(a, g, x);
    const cplx lp = log_tau_x(a, g, x + step);
    // Branch jumps of the log cancel in the real part.
    return -2.0 * ((lp.real() - 2.0 * l0.real() + lm.real()) / (step * step));
}

RationalApprox rational_approx_exp(const std::vector<double>& h, int k, const Contour& contour) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const GroupElement eh = exp_poly(h);
    const int d = eh.degree();
    if (d < 1) throw std::invalid_argument("h must be non-constant");
    auto roots = [&](double shift) {
        // roots of h(z) + shift
        std::vector<cplx> out;
        CMat comp = CMat::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) {
            const double ci = (i == 0 ? h[0] + shift : h[i]);
            comp(i, d - 1) = -ci / h[d];
        }
        Eigen::ComplexEigenSolver<CMat> es(comp);
        for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
        return out;
    };
    RationalApprox R;
    const double s = 2.0 * k;
    for (cplx z : roots(s))
        for (int i = 0; i < k; ++i) R.r.zeros.push_back(z);
    for (cplx z : roots(-s))
        for (int i = 0; i < k; ++i) R.r.poles.push_back(z);
    for (const auto* set : {&R.r.zeros, &R.r.poles})
        for (cplx z : *set)
            if (contour.inside(z) || contour.distance(z) < contour.dist_min())
                throw std::domain_error("rational approximation has a root in the closure of D+; increase k");
    for (int j = 0; j < contour.size(); ++j) {
        const cplx z = contour.nodes(j);
        R.sup_error = std::max(R.sup_error, std::abs(R.r(z) - std::exp(eh.exponent(z))));
    }
    return R;
}

}  // namespace kdv
