#include "kdv/group.hpp"

#include <algorithm>
#include <cmath>

namespace kdv {

cplx RationalFactor::operator()(cplx z) const {
    cplx v = 1.0;
    for (cplx e : zeros) v *= 1.0 - z / e;
    for (cplx p : poles) v /= 1.0 - z / p;
    return v;
}

cplx RationalFactor::derivative(cplx z) const {
    cplx s = 0.0;
    cplx prod = 1.0;
    bool hit = false;
    for (cplx e : zeros) {
        if (std::abs(z - e) == 0.0) {
            hit = true;
            continue;
        }
        s += 1.0 / (z - e);
        prod *= 1.0 - z / e;
    }
    for (cplx p : poles) {
        s -= 1.0 / (z - p);
        prod /= 1.0 - z / p;
    }
    if (!hit) return prod * s;
    // simple zero at z: r'(z) = −(1/η)·Π_{others}
    for (cplx e : zeros) {
        if (std::abs(z - e) == 0.0) return -prod / e;
    }
    return 0.0;
}

RationalFactor RationalFactor::operator*(const RationalFactor& o) const {
    RationalFactor r = *this;
    r.zeros.insert(r.zeros.end(), o.zeros.begin(), o.zeros.end());
    r.poles.insert(r.poles.end(), o.poles.begin(), o.poles.end());
    return r;
}

namespace {
bool conj_closed(const std::vector<cplx>& pts, double tol) {
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < pts.size() && !found; ++j) {
            if (!used[j] && std::abs(pts[j] - std::conj(pts[i])) <= tol * (1.0 + std::abs(pts[i]))) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}
}  // namespace

bool RationalFactor::is_real(double tol) const { return conj_closed(zeros, tol) && conj_closed(poles, tol); }

RationalFactor q_factor(cplx zeta) { return {{}, {zeta}}; }
RationalFactor p_factor(cplx eta) { return {{-eta}, {}}; }

cplx GroupElement::exponent(cplx z) const {
    cplx v = 0.0;
    for (int k = static_cast<int>(h.size()) - 1; k >= 0; --k) v = v * z + h[k];
    return v;
}

int GroupElement::degree() const {
    for (int k = static_cast<int>(h.size()) - 1; k >= 0; --k)
        if (h[k] != 0.0) return k;
    return 0;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    GroupElement g;
    g.r = r * o.r;
    g.h.assign(std::max(h.size(), o.h.size()), 0.0);
    for (std::size_t k = 0; k < h.size(); ++k) g.h[k] += h[k];
    for (std::size_t k = 0; k < o.h.size(); ++k) g.h[k] += o.h[k];
    return g;
}

GroupElement identity_element() { return {}; }

GroupElement e_tx(double t, double x) { return {{}, {0.0, x, 0.0, t}}; }

GroupElement from_rational(const RationalFactor& r) { return {r, {}}; }

GroupElement exp_poly(const std::vector<double>& h) {
    for (std::size_t k = 0; k < h.size(); k += 2)
        if (h[k] != 0.0) throw std::invalid_argument("h must be an odd polynomial");
    return {{}, h};
}

CVec sample(const GroupElement& g, const CVec& z) {
    CVec v(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) v(j) = g(z(j));
    return v;
}

CVec log_derivative(const GroupElement& g, const CVec& z) {
    CVec v(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        cplx d = 0.0, zk = 1.0;
        for (const cplx& e : g.r.zeros) d += 1.0 / (z(j) - e);
        for (const cplx& p : g.r.poles) d -= 1.0 / (z(j) - p);
        for (std::size_t k = 1; k < g.h.size(); ++k, zk *= z(j)) d += double(k) * g.h[k] * zk;
        v(j) = d;
    }
    return v;
}

}  // namespace kdv
