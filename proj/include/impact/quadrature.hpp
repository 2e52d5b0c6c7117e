#pragma once

#include <cmath>
#include <cstdlib>

namespace impact {

/// Composite Simpson rule with n (even) panels.
template <class F>
double composite_simpson(F&& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(a + i * h);
    for (int i = 2; i < n; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

namespace detail {

template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with a relative tolerance target.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol, int max_depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::abs(whole) > 1.0 ? std::abs(whole) : 1.0;
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, rel_tol * scale, max_depth);
}

}  // namespace impact
