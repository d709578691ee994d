#include "kdv/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <fftw3.h>

namespace kdv {

double PeriodizedField::mass() const {
    double s = 0.0;
    for (double v : samples) s += v;
    return s * dx();
}

double PeriodizedField::operator()(double xv) const { return sample_at(*this, {xv}).front(); }

std::vector<double> sample_at(const PeriodizedField& f, const std::vector<double>& xs) {
    const int N = f.size();
    std::vector<cplx> c(N / 2 + 1);
    for (int m = 0; m <= N / 2; ++m) {
        cplx s = 0.0;
        for (int j = 0; j < N; ++j) s += f.samples[j] * std::polar(1.0, -2.0 * pi * m * j / N);
        c[m] = s / double(N);
    }
    std::vector<double> out;
    out.reserve(xs.size());
    for (double xv : xs) {
        const double theta = 2.0 * pi * (xv - f.x(0)) / f.length;
        double v = c[0].real();
        for (int m = 1; m < N / 2; ++m) v += 2.0 * (c[m] * std::polar(1.0, m * theta)).real();
        v += c[N / 2].real() * std::cos((N / 2) * theta);
        out.push_back(v);
    }
    return out;
}

PeriodizedField periodize(const std::function<double(double)>& q, double length, int count) {
    if (count < 8 || (count & (count - 1)) != 0) throw std::invalid_argument("periodize: count must be a power of two");
    if (!(length > 0.0)) throw std::invalid_argument("periodize: length must be positive");
    PeriodizedField f;
    f.length = length;
    f.samples.resize(count);
    for (int j = 0; j < count; ++j) f.samples[j] = q(f.x(j));
    return f;
}

namespace {

class Stepper {
public:
    Stepper(int N, double length) : N_(N), M_(N / 2 + 1), k_(M_) {
        buf_ = fftw_alloc_real(N);
        spec_ = fftw_alloc_complex(M_);
        fwd_ = fftw_plan_dft_r2c_1d(N, buf_, spec_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(N, spec_, buf_, FFTW_ESTIMATE);
        for (int m = 0; m < M_; ++m) k_[m] = 2.0 * pi * m / length;
        k_[M_ - 1] = 0.0;  // Nyquist mode carries no derivative
    }
    ~Stepper() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
        fftw_free(spec_);
    }
    Stepper(const Stepper&) = delete;
    Stepper& operator=(const Stepper&) = delete;

    double kmax() const { return k_[M_ - 2]; }
    int modes() const { return M_; }
    double k(int m) const { return k_[m]; }

    std::vector<cplx> forward(const std::vector<double>& q) {
        std::copy(q.begin(), q.end(), buf_);
        fftw_execute(fwd_);
        std::vector<cplx> r(M_);
        for (int m = 0; m < M_; ++m) r[m] = cplx(spec_[m][0], spec_[m][1]);
        return r;
    }
    std::vector<double> backward(const std::vector<cplx>& h) {
        for (int m = 0; m < M_; ++m) {
            spec_[m][0] = h[m].real();
            spec_[m][1] = h[m].imag();
        }
        fftw_execute(bwd_);
        std::vector<double> r(buf_, buf_ + N_);
        for (double& v : r) v /= N_;
        return r;
    }
    // Fourier transform of −(3/2) q q_x = −¾ (q²)_x
    std::vector<cplx> nonlinear(const std::vector<cplx>& qh, double& qmax) {
        std::vector<double> q = backward(qh);
        qmax = 0.0;
        for (double& v : q) {
            qmax = std::max(qmax, std::abs(v));
            v = v * v;
        }
        std::vector<cplx> r = forward(q);
        for (int m = 0; m < M_; ++m) r[m] *= cplx(0.0, -0.75 * k_[m]);
        return r;
    }

private:
    int N_, M_;
    std::vector<double> k_;
    double* buf_;
    fftw_complex* spec_;
    fftw_plan fwd_, bwd_;
};

void check_edges(const PeriodizedField& q, double tol) {
    const int N = q.size();
    for (int j : {0, 1, N - 1, N - 2})
        if (std::abs(q.samples[j]) > tol)
            throw std::invalid_argument("kdv_reference_integrate: field does not vanish at the periodic boundary");
}

}  // namespace

std::vector<PeriodizedField> kdv_reference_trajectory(const PeriodizedField& q0, const std::vector<double>& times,
                                                      double dt, const IntegratorOptions& opt) {
    const int N = q0.size();
    if (N < 8 || (N & (N - 1)) != 0) throw std::invalid_argument("kdv_reference_integrate: sample count must be a power of two");
    if (!(dt > 0.0)) throw std::invalid_argument("kdv_reference_integrate: dt must be positive");
    check_edges(q0, opt.edge_tol);
    Stepper S(N, q0.length);
    const int M = S.modes();
    std::vector<cplx> qh = S.forward(q0.samples);
    std::vector<cplx> Lh(M);
    for (int m = 0; m < M; ++m) {
        const double k = S.k(m);
        Lh[m] = cplx(0.0, -0.25 * k * k * k);  // ¼ ∂³ → ¼ (ik)³
    }
    std::vector<PeriodizedField> out;
    double t = 0.0;
    std::vector<cplx> k1(M), k2(M), k3(M), k4(M), tmp(M), E(M), E2(M);
    double cur_dt = -1.0;
    auto step = [&](double h) {
        if (h != cur_dt) {
            for (int m = 0; m < M; ++m) {
                E[m] = std::exp(Lh[m] * h);
                E2[m] = std::exp(Lh[m] * (0.5 * h));
            }
            cur_dt = h;
        }
        double qmax = 0.0;
        k1 = S.nonlinear(qh, qmax);
        if (!std::isfinite(qmax) || qmax > opt.blowup)
            throw std::runtime_error("kdv_reference_integrate: blow-up detected");
        // explicit RK4 stability bound on the advective term, |λ h| < 2.8
        if (1.5 * qmax * S.kmax() * h > 2.8)
            throw std::runtime_error("kdv_reference_integrate: CFL violation, reduce dt");
        for (int m = 0; m < M; ++m) tmp[m] = E2[m] * (qh[m] + 0.5 * h * k1[m]);
        k2 = S.nonlinear(tmp, qmax);
        for (int m = 0; m < M; ++m) tmp[m] = E2[m] * qh[m] + 0.5 * h * k2[m];
        k3 = S.nonlinear(tmp, qmax);
        for (int m = 0; m < M; ++m) tmp[m] = E[m] * qh[m] + h * E2[m] * k3[m];
        k4 = S.nonlinear(tmp, qmax);
        for (int m = 0; m < M; ++m)
            qh[m] = E[m] * qh[m] + h / 6.0 * (E[m] * k1[m] + 2.0 * E2[m] * (k2[m] + k3[m]) + k4[m]);
    };
    for (double T : times) {
        if (T < t - 1e-14) throw std::invalid_argument("kdv_reference_integrate: times must be ascending and non-negative");
        const double span = T - t;
        const int steps = static_cast<int>(std::ceil(span / dt - 1e-9));
        if (steps > 0) {
            const double h = span / steps;
            for (int s = 0; s < steps; ++s) step(h);
        }
        t = T;
        PeriodizedField f;
        f.length = q0.length;
        f.samples = S.backward(qh);
        for (double v : f.samples)
            if (!std::isfinite(v) || std::abs(v) > opt.blowup)
                throw std::runtime_error("kdv_reference_integrate: blow-up detected");
        out.push_back(std::move(f));
    }
    return out;
}

PeriodizedField kdv_reference_integrate(const PeriodizedField& q0, double T, double dt, const IntegratorOptions& opt) {
    if (T < 0.0) throw std::invalid_argument("kdv_reference_integrate: T must be non-negative");
    return kdv_reference_trajectory(q0, {T}, dt, opt).front();
}

std::vector<cplx> second_derivative6(const std::vector<cplx>& f, double dx) {
    static const double c[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
    const int n = static_cast<int>(f.size());
    std::vector<cplx> d(n, 0.0);
    for (int j = 3; j < n - 3; ++j) {
        cplx s = 0.0;
        for (int i = 0; i < 7; ++i) s += c[i] * f[j + i - 3];
        d[j] = s / (dx * dx);
    }
    return d;
}

double schrodinger_residual(const std::vector<cplx>& f, double x0, double dx, const std::function<double(double)>& q,
                            cplx z) {
    const int n = static_cast<int>(f.size());
    if (n < 7) throw std::invalid_argument("schrodinger_residual: need at least 7 grid points");
    if (!(dx > 0.0)) throw std::invalid_argument("schrodinger_residual: dx must be positive");
    const std::vector<cplx> d2 = second_derivative6(f, dx);
    double fmax = 0.0, r = 0.0;
    for (const cplx& v : f) fmax = std::max(fmax, std::abs(v));
    for (int j = 3; j < n - 3; ++j) r = std::max(r, std::abs(-d2[j] + (q(x0 + j * dx) + z * z) * f[j]));
    return fmax > 0.0 ? r / fmax : r;
}

}  // namespace kdv
