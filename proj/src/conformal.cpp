#include "kdv/conformal.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace kdv {

namespace {

template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b, int n) {
    std::vector<T> r(n + 1, T(0));
    for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == T(0)) continue;
        for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

template <class T>
std::vector<T> series_inv(const std::vector<T>& a, int n) {
    std::vector<T> r(n + 1, T(0));
    r[0] = T(1) / a[0];
    for (int m = 1; m <= n; ++m) {
        T s(0);
        for (int i = 1; i <= m && i < static_cast<int>(a.size()); ++i) s += a[i] * r[m - i];
        r[m] = -s / a[0];
    }
    return r;
}

Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

template <class T>
SeriesInZInverse<T> invert_series(const SeriesInZInverse<T>& F, int order) {
    if (order <= 0) throw std::invalid_argument("invert_series: order must be positive");
    const int n = order;
    // In w = 1/s: (s + F(s))^{−j} = w^j B(w)^{−j} with B = 1 + Σ a_i w^{i+1}.
    std::vector<T> B(n + 1, T(0));
    B[0] = T(1);
    for (int i = 1; i + 1 <= n && i <= static_cast<int>(F.coef.size()); ++i) B[i + 1] = F.coef[i - 1];
    const std::vector<T> Binv = series_inv(B, n);
    std::vector<std::vector<T>> pw(n + 1);  // pw[j] = w^j B^{−j}
    std::vector<T> cur(n + 1, T(0));
    cur[0] = T(1);
    for (int j = 1; j <= n; ++j) {
        cur = series_mul(cur, Binv, n);
        pw[j].assign(n + 1, T(0));
        for (int i = 0; i + j <= n; ++i) pw[j][i + j] = cur[i];
    }
    SeriesInZInverse<T> G;
    G.coef.assign(n, T(0));
    G.real = F.real;
    for (int m = 1; m <= n; ++m) {
        // coefficient of w^m in F + Σ_{j<m} x_j (s+F)^{−j}
        T c = (m <= static_cast<int>(F.coef.size())) ? F.coef[m - 1] : T(0);
        for (int j = 1; j < m; ++j) c += G.coef[j - 1] * pw[j][m];
        G.coef[m - 1] = -c;
    }
    return G;
}

template SeriesInZInverse<double> invert_series(const SeriesInZInverse<double>&, int);
template SeriesInZInverse<Rational> invert_series(const SeriesInZInverse<Rational>&, int);

double conformal_a(int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    return std::sqrt(pi) * boost::math::tgamma(double(k)) / (2.0 * boost::math::tgamma(k + 1.5));
}

double conformal_b(int k) {
    const double a = conformal_a(k);
    const double r = (k + 0.5) / (k - 0.5);
    return 2.0 * a / std::sqrt(2.0 * a * a * k * r * r + 1.0);
}

std::vector<Rational> conformal_p(int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    std::vector<Rational> p(k + 1, Rational(0));
    const Rational c(2 * k - 1, 2 * k + 1);
    for (int i = 0; i <= k; ++i) {
        const Rational b = binom(k, i) * (((k - i) % 2 == 0) ? 1 : -1);
        p[i] += c * b;
    }
    for (int j = 0; j <= k - 1; ++j) {
        const Rational b = binom(k - 1, j) * (((k - 1 - j) % 2 == 0) ? 1 : -1);
        p[j + 1] += Rational(2) * b / Rational(2 * j + 3);
    }
    return p;
}

namespace {

struct PolyCache {
    int k = 0;
    std::vector<double> p;
    double p1 = 0.0;
};

const PolyCache& poly(int k) {
    thread_local std::vector<PolyCache> cache;
    for (const auto& c : cache)
        if (c.k == k) return c;
    PolyCache c;
    c.k = k;
    Rational s(0);
    for (const Rational& v : conformal_p(k)) {
        c.p.push_back(static_cast<double>(v));
        s += v;
    }
    c.p1 = static_cast<double>(s);
    cache.push_back(c);
    return cache.back();
}

cplx horner(const std::vector<double>& p, cplx z) {
    cplx v = 0.0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * z + p[i];
    return v;
}

}  // namespace

cplx psi_k(cplx z, int k) {
    if (z == cplx(0.0)) return 0.0;
    const PolyCache& P = poly(k);
    const cplx w = std::sqrt(z);
    if (std::abs(z - 1.0) > 0.5) return std::pow(z - 1.0, -k) * (w * horner(P.p, z) - P.p1);
    // (z−1)^{−k}∫_1^{√z} s²(s²−1)^{k−1} ds = (w+1)^{−k}∫_0^1 τ^{k−1} s²(s+1)^{k−1} dτ, s = 1 + τ(w−1)
    auto f = [&](double t) {
        const cplx s = 1.0 + t * (w - 1.0);
        return std::pow(t, k - 1) * s * s * std::pow(s + 1.0, k - 1);
    };
    auto re = [&](double t) { return f(t).real(); };
    auto im = [&](double t) { return f(t).imag(); };
    using GL = boost::math::quadrature::gauss<double, 30>;
    const cplx I(GL::integrate(re, 0.0, 1.0), GL::integrate(im, 0.0, 1.0));
    const double c = (k - 0.5) / (k + 0.5);
    return c * w + 2.0 * std::pow(w + 1.0, -k) * I;
}

cplx phi_k(cplx z, int k) {
    const cplx p = psi_k(z, k);
    return p * p;
}

SeriesInZInverse<Rational> conformal_F(int k, int order) {
    const int n = order;
    const std::vector<Rational> p = conformal_p(k);
    Rational p1(0);
    for (const auto& v : p) p1 += v;
    // (1 − w²)^{−k} in w = 1/s
    std::vector<Rational> E(n + 1, Rational(0));
    for (int i = 0; 2 * i <= n; ++i) E[2 * i] = binom(k + i - 1, i);
    std::vector<Rational> F(n + 2, Rational(0));  // F[j] coefficient of s^{−j}
    // −p(1) s^{−2k}(1 − w²)^{−k}
    for (int i = 0; i + 2 * k <= n; ++i) F[i + 2 * k] -= p1 * E[i];
    // s·(s²−1)^{−k} p(s²) − s = Σ_j p_j s^{2j+1−2k}(1−w²)^{−k} − s
    for (int j = 0; j <= k; ++j) {
        const int shift = 2 * k - 2 * j - 1;  // power of w, may be −1
        for (int i = 0; i <= n + 1; ++i) {
            const int e = i + shift;
            if (e < -1 || e > n || i > n) continue;
            if (e == -1) {
                if (i == 0 && j == k) continue;  // cancels with −s
                throw std::logic_error("conformal_F: unexpected positive power");
            }
            F[e] += p[j] * E[i];
        }
    }
    SeriesInZInverse<Rational> S;
    if (F[0] != 0) throw std::logic_error("conformal_F: nonzero constant term");
    S.coef.assign(F.begin() + 1, F.begin() + n + 1);
    return S;
}

cplx ConformalInverse::seed(cplx w) const {
    const cplx t = std::sqrt(w);
    cplx g = 0.0;
    cplx ti = 1.0 / t, pw = ti;
    for (const auto& x : G.coef) {
        g += static_cast<double>(x) * pw;
        pw *= ti;
    }
    const cplx s = t + g;
    return s * s;
}

cplx ConformalInverse::operator()(cplx w) const {
    cplx z = seed(w);
    for (int it = 0; it < 50; ++it) {
        const cplx f = phi_k(z, k) - w;
        const double h = 1e-6 * std::max(1.0, std::abs(z));
        const cplx d = (phi_k(z + h, k) - phi_k(z - h, k)) / (2.0 * h);
        const cplx step = f / d;
        z -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
    }
    const cplx f = phi_k(z, k) - w;
    if (std::abs(f) <= 1e-10 * std::max(1.0, std::abs(w))) return z;
    throw std::runtime_error("phi_k_inverse: Newton did not converge");
}

ConformalInverse phi_k_inverse(int k, int order) {
    ConformalInverse inv;
    inv.k = k;
    inv.order = std::max(order, 2 * k + 2);
    inv.G = invert_series(conformal_F(k, inv.order), inv.order);
    inv.g1_inf = 2.0 * static_cast<double>(inv.G.coef[0]);
    inv.g2_inf = 2.0 * static_cast<double>(inv.G.coef[2 * k - 1]);
    const double a = conformal_a(k);
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(inv.g1_inf + 1.0 / (k * k - 0.25)) > 1e-12 || std::abs(inv.g2_inf + 2.0 * sgn * a) > 1e-12)
        throw std::logic_error("phi_k_inverse: series constants disagree with the closed form");
    return inv;
}

ConformalFit fit_inverse_constants(const ConformalInverse& inv, double radius, int terms) {
    // s(t) solves ψ̃(s) = t with ψ̃(s) = (s²−1)^{−k}(s p(s²) − p(1)), the continuation of ψ_k(s²),
    // on a full circle |t| = √radius; Laurent coefficients of s(t) − t by the trapezoid rule.
    const int k = inv.k;
    const PolyCache& P = poly(k);
    auto tilde = [&](cplx s) { return std::pow(s * s - 1.0, -k) * (s * horner(P.p, s * s) - P.p1); };
    const int M = std::max(64, 4 * terms);
    const double rho = std::sqrt(radius);
    std::vector<cplx> g(M);
    double worst = 0.0;
    for (int i = 0; i < M; ++i) {
        const cplx t = std::polar(rho, 2.0 * pi * i / M);
        cplx s = t, ti = 1.0 / t, pw = ti;
        for (const auto& x : inv.G.coef) {
            s += static_cast<double>(x) * pw;
            pw *= ti;
        }
        for (int it = 0; it < 50; ++it) {
            const double h = 1e-6 * std::abs(s);
            const cplx d = (tilde(s + h) - tilde(s - h)) / (2.0 * h);
            const cplx step = (tilde(s) - t) / d;
            s -= step;
            if (std::abs(step) <= 1e-15 * std::abs(s)) break;
        }
        worst = std::max(worst, std::abs(tilde(s) - t));
        g[i] = s - t;
    }
    auto coef = [&](int j) {  // coefficient of t^{−j}
        cplx c = 0.0;
        for (int i = 0; i < M; ++i) c += g[i] * std::polar(std::pow(rho, j), 2.0 * pi * i * j / M);
        return c / double(M);
    };
    ConformalFit f;
    f.g1_inf = 2.0 * coef(1).real();
    f.g2_inf = 2.0 * coef(2 * k).real();
    f.residual = worst;
    return f;
}

}  // namespace kdv
