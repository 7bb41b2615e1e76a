#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (positive half; node 0 included once).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double gk_norm(double v) { return std::abs(v); }
inline double gk_norm(std::complex<double> v) { return std::abs(v); }

/// One Gauss-Kronrod 7-15 panel on [a, b]; error from |K15 - G7|.
template <class F, class T = std::invoke_result_t<F, double>>
QuadratureResult<T> gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T acc_k = gk_wk[7] * f(mid);
    T acc_g = gk_wg[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const T fv = f(mid - dx) + f(mid + dx);
        acc_k += gk_wk[i] * fv;
        if (i % 2 == 1) acc_g += gk_wg[i / 2] * fv;
    }
    QuadratureResult<T> out;
    out.value = half * acc_k;
    out.evaluations = 15;
    const double diff = gk_norm(half * (acc_k - acc_g));
    // QUADPACK-style sharpened error estimate
    out.error = diff;
    return out;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
/// Bisects the interval with the largest error estimate until
/// sum(err) <= max(abs_floor, rel_tol * |value|) or the interval budget is hit.
template <class F, class T = std::invoke_result_t<F, double>>
QuadratureResult<T> integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-9,
                                       double abs_floor = 0.0, std::size_t max_intervals = 4000) {
    struct Interval {
        double a, b, error;
        T value;
    };
    std::vector<Interval> work;
    std::size_t evals = 0;
    auto push = [&](double x0, double x1) {
        auto r = detail::gk15(f, x0, x1);
        evals += r.evaluations;
        if (!std::isfinite(detail::gk_norm(r.value)) || !std::isfinite(r.error))
            throw quadrature_failure("integrate_adaptive: non-finite integrand", x0, x1,
                                     std::numeric_limits<double>::infinity());
        work.push_back({x0, x1, r.error, r.value});
    };
    push(a, b);
    while (true) {
        T total{};
        double err = 0.0;
        for (const auto& w : work) {
            total += w.value;
            err += w.error;
        }
        const double target = std::max(abs_floor, rel_tol * detail::gk_norm(total));
        if (err <= target || err == 0.0) return {total, err, evals};
        if (work.size() >= max_intervals) {
            auto worst =
                std::max_element(work.begin(), work.end(),
                                 [](const Interval& u, const Interval& v) { return u.error < v.error; });
            throw quadrature_failure("integrate_adaptive: tolerance not reached", worst->a,
                                     worst->b, err);
        }
        auto worst =
            std::max_element(work.begin(), work.end(),
                             [](const Interval& u, const Interval& v) { return u.error < v.error; });
        const Interval cell = *worst;
        work.erase(worst);
        const double m = 0.5 * (cell.a + cell.b);
        push(cell.a, m);
        push(m, cell.b);
    }
}

/// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
template <class F>
double brent_root(F&& f, double a, double b, double xtol, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw invalid_configuration("brent_root: interval does not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

/// Richardson-extrapolated central difference, O(h^4).
template <class F, class Z>
auto derivative(F&& f, Z z, double h) {
    auto d = [&](double hh) { return (f(z + hh) - f(z - hh)) / (2.0 * hh); };
    const auto d1 = d(h);
    const auto d2 = d(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace casimir
