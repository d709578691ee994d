#include "kdv/potentials.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>
#include <boost/numeric/odeint.hpp>

namespace kdv {

Potential zero_potential() {
    Potential p;
    p.kind = "zero";
    p.q = [](double) { return 0.0; };
    p.q_complex = [](cplx) { return cplx(0.0); };
    p.support = 1.0;
    return p;
}

Potential sech2_sum(const std::vector<double>& kappa, const std::vector<double>& shift) {
    if (kappa.size() != shift.size()) throw std::invalid_argument("sech2_sum: size mismatch");
    Potential p;
    p.kind = "sech2_sum";
    p.q_complex = [kappa, shift](cplx x) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < kappa.size(); ++i) {
            const cplx c = std::cosh(kappa[i] * (x - shift[i]));
            s += -2.0 * kappa[i] * kappa[i] / (c * c);
        }
        return s;
    };
    auto qc = p.q_complex;
    p.q = [qc](double x) { return qc(x).real(); };
    double kmin = 1e300, smax = 0.0, kmax = 0.0;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        if (!(kappa[i] > 0.0)) throw std::invalid_argument("sech2_sum: kappa must be positive");
        kmin = std::min(kmin, kappa[i]);
        kmax = std::max(kmax, kappa[i]);
        smax = std::max(smax, std::abs(shift[i]));
    }
    p.support = smax + 20.0 / kmin;
    p.lambda0 = -kmax * kmax;
    return p;
}

Potential soliton_potential(double kappa, double x0) {
    Potential p = sech2_sum({kappa}, {x0});
    p.kind = "soliton";
    return p;
}

Potential gaussian_bump(double amplitude, double sigma, double x0) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_bump: sigma must be positive");
    Potential p;
    p.kind = "gaussian_bump";
    p.q_complex = [=](cplx x) { return amplitude * std::exp(-(x - x0) * (x - x0) / (sigma * sigma)); };
    p.q = [=](double x) { return amplitude * std::exp(-(x - x0) * (x - x0) / (sigma * sigma)); };
    p.support = std::abs(x0) + 6.0 * sigma;
    p.lambda0 = std::min(0.0, amplitude);
    return p;
}

Potential tabulated_potential(const std::vector<double>& x, const std::vector<double>& q) {
    if (x.size() != q.size() || x.size() < 4) throw std::invalid_argument("tabulated potential needs >= 4 points");
    auto xs = x, qs = q;
    auto spline = std::make_shared<boost::math::interpolators::makima<std::vector<double>>>(std::move(xs), std::move(qs));
    const double lo = x.front(), hi = x.back();
    Potential p;
    p.kind = "tabulated";
    p.q = [spline, lo, hi](double t) { return (t < lo || t > hi) ? 0.0 : (*spline)(t); };
    p.support = std::max(std::abs(lo), std::abs(hi));
    p.smoothness = 1;
    double mn = 0.0;
    for (double v : q) mn = std::min(mn, v);
    p.lambda0 = mn;
    return p;
}

Potential tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<double> xs, qs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            xs.push_back(a);
            qs.push_back(b);
        }
    }
    return tabulated_potential(xs, qs);
}

MFunction soliton_m(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("soliton_m: kappa must be positive");
    MFunction m;
    const double k2 = kappa * kappa;
    m.eval = [k2](cplx z) { return z - k2 / z; };
    m.mu0 = kappa;
    m.asym.assign(16, 0.0);
    m.asym[0] = -k2;
    m.label = "soliton";
    return m;
}

MFunction free_m() {
    MFunction m;
    m.eval = [](cplx z) { return z; };
    m.asym.assign(16, 0.0);
    m.label = "free";
    return m;
}

namespace {

using State = std::array<double, 4>;

double default_cutoff(const Potential& q) {
    if (q.lambda0 < 0.0) return 30.0 / std::sqrt(-q.lambda0);
    return q.support;
}

cplx riccati_shoot(const Potential& q, cplx z, double X, const ShootingOptions& opt) {
    namespace ode = boost::numeric::odeint;
    const double s = z.real() > 0.0 ? 1.0 : -1.0;
    // ρ = w′/w with w = f·e^{zx}: ρ′ = 2zρ + q − ρ²
    auto rhs = [&](const std::array<double, 2>& y, std::array<double, 2>& dy, double x) {
        const cplx r(y[0], y[1]);
        const cplx d = 2.0 * z * r + q.q(x) - r * r;
        dy[0] = d.real();
        dy[1] = d.imag();
    };
    std::array<double, 2> y{0.0, 0.0};
    ode::integrate_adaptive(ode::make_controlled(opt.atol, opt.rtol, ode::runge_kutta_dopri5<std::array<double, 2>>()),
                            rhs, y, s * X, 0.0, -s * 1e-3);
    return z - cplx(y[0], y[1]);
}

}  // namespace

cplx weyl_from_ode(const Potential& q, cplx z, const ShootingOptions& opt) {
    namespace ode = boost::numeric::odeint;
    if (z.real() == 0.0) throw std::domain_error("weyl_from_ode needs Re z != 0");
    const double X = opt.X > 0.0 ? opt.X : default_cutoff(q);
    const double s = z.real() > 0.0 ? 1.0 : -1.0;
    // w = f·e^{zx} solves w″ − 2z w′ = q w, w(±X) = 1, w′(±X) = 0.
    auto rhs = [&](const State& y, State& dy, double x) {
        const cplx w(y[0], y[1]), wp(y[2], y[3]);
        const cplx wpp = 2.0 * z * wp + q.q(x) * w;
        dy = {wp.real(), wp.imag(), wpp.real(), wpp.imag()};
    };
    State y{1.0, 0.0, 0.0, 0.0};
    ode::integrate_adaptive(ode::make_controlled(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>()), rhs, y,
                            s * X, 0.0, -s * 1e-3);
    const cplx w(y[0], y[1]), wp(y[2], y[3]);
    if (std::abs(w) < 1e-13) throw std::domain_error("weyl_from_ode: f(0) vanishes");
    const cplx m = z - wp / w;
    if (std::isfinite(m.real()) && std::isfinite(m.imag())) return m;
    return riccati_shoot(q, z, X, opt);
}

std::vector<double> taylor_coefficients(const Potential& q, double x0, int n) {
    std::vector<double> a(n + 1, 0.0);
    if (q.q_complex) {
        const int K = 128;
        const double rho = 0.5;
        for (int j = 0; j < K; ++j) {
            const double th = 2.0 * pi * j / K;
            const cplx v = q.q_complex(x0 + std::polar(rho, th));
            for (int k = 0; k <= n; ++k) a[k] += (v * std::polar(1.0, -k * th)).real();
        }
        for (int k = 0; k <= n; ++k) a[k] /= K * std::pow(rho, k);
        return a;
    }
    if (n > q.smoothness) throw std::domain_error("derivative order exceeds declared smoothness");
    // Fornberg weights on a centered stencil.
    const int half = n / 2 + 3;
    const double h = 0.02;
    const int m = 2 * half + 1;
    std::vector<double> xs(m);
    for (int i = 0; i < m; ++i) xs[i] = (i - half) * h;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m, 0.0));
    double c1 = 1.0, c4 = xs[0];
    c[0][0] = 1.0;
    for (int i = 1; i < m; ++i) {
        const int mn = std::min(i, n);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        double d = 0.0;
        for (int i = 0; i < m; ++i) d += c[k][i] * q.q(x0 + xs[i]);
        a[k] = d / fact;
    }
    return a;
}

namespace {

using Series = std::vector<double>;

Series series_mul(const Series& a, const Series& b) {
    Series r(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Series series_der(const Series& a) {
    Series r(a.size(), 0.0);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = i * a[i];
    return r;
}

// c_1 .. c_n as Taylor series at x.
std::vector<Series> c_series(const Potential& q, double x, int n) {
    const int D = std::max(n, 2) + 1;
    const Series qs = taylor_coefficients(q, x, D - 1);
    std::vector<Series> c(n + 1, Series(D, 0.0));
    if (n >= 2)
        for (int i = 0; i < D; ++i) c[2][i] = 0.5 * qs[i];
    for (int j = 3; j <= n; ++j) {
        Series s = series_der(c[j - 1]);
        for (int l = 1; l < j; ++l) {
            const Series p = series_mul(c[l], c[j - l]);
            for (int i = 0; i < D; ++i) s[i] -= p[i];
        }
        for (int i = 0; i < D; ++i) c[j][i] = 0.5 * s[i];
    }
    return c;
}

}  // namespace

JostData jost_coefficients(const Potential& q, double x, int n) {
    JostData J;
    const auto cs = c_series(q, x, n);
    for (int j = 1; j <= n; ++j) J.c.push_back(cs[j][0]);

    const double X = std::max(q.support, x + 1.0);
    const double h = 2e-3;
    const int m = static_cast<int>(std::ceil((X - x) / h)) + 1;
    const double dx = (X - x) / (m - 1);
    const Eigen::MatrixXd D = fd_first_derivative(m, dx);
    Eigen::VectorXd qv(m);
    for (int i = 0; i < m; ++i) qv(i) = q.q(x + i * dx);
    auto tail_integral = [&](const Eigen::VectorXd& f) {
        Eigen::VectorXd r(m);
        r(m - 1) = 0.0;
        for (int i = m - 2; i >= 0; --i) r(i) = r(i + 1) + 0.5 * dx * (f(i) + f(i + 1));
        return r;
    };
    Eigen::VectorXd f = -tail_integral(qv);
    for (int j = 1; j <= n; ++j) {
        J.f.push_back(f(0));
        const Eigen::VectorXd next = -(D * f) - tail_integral(qv.cwiseProduct(f));
        f = next;
    }
    return J;
}

std::vector<double> asymptotic_coefficients(const Potential& q, int count) {
    const auto cs = c_series(q, 0.0, count + 1);
    std::vector<double> m(count);
    for (int k = 1; k <= count; ++k) m[k - 1] = cs[k + 1][0];
    return m;
}

MFunction weyl_mfunction(const Potential& q, int coefficient_count, const ShootingOptions& opt) {
    struct Memo {
        std::mutex mu;
        std::map<std::pair<double, double>, cplx> table;
    };
    auto memo = std::make_shared<Memo>();
    MFunction m;
    m.eval = [q, opt, memo](cplx z) {
        const auto key = std::make_pair(z.real(), z.imag());
        {
            std::lock_guard<std::mutex> lock(memo->mu);
            auto it = memo->table.find(key);
            if (it != memo->table.end()) return it->second;
        }
        const cplx v = weyl_from_ode(q, z, opt);
        std::lock_guard<std::mutex> lock(memo->mu);
        memo->table.emplace(key, v);
        return v;
    };
    m.mu0 = q.lambda0 < 0.0 ? std::sqrt(-q.lambda0) : 0.0;
    m.asym = asymptotic_coefficients(q, coefficient_count);
    m.label = q.kind;
    return m;
}

AsymptoticFit fit_asymptotics(const MFunction& m, int order, const Contour& C, int points) {
    std::vector<cplx> zs;
    const int M = C.half;
    for (int i = 0; i < points / 2; ++i) {
        zs.push_back(C.nodes(M - 1 - i));
        zs.push_back(C.nodes(i));
    }
    const int P = static_cast<int>(zs.size());
    Eigen::MatrixXd A(2 * P, order);
    Eigen::VectorXd b(2 * P);
    for (int i = 0; i < P; ++i) {
        const cplx r = m(zs[i]) - zs[i];
        b(2 * i) = r.real();
        b(2 * i + 1) = r.imag();
        for (int k = 1; k <= order; ++k) {
            const cplx p = std::pow(zs[i], -k);
            A(2 * i, k - 1) = p.real();
            A(2 * i + 1, k - 1) = p.imag();
        }
    }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    AsymptoticFit f;
    f.coef.assign(x.data(), x.data() + order);
    f.residual = (A * x - b).norm() / std::max(b.norm(), 1e-300);
    return f;
}

}  // namespace kdv
