#pragma once

// Small shared numerical helpers: adaptive Simpson quadrature and a
// deterministic least-squares fit used by the empirical estimators.

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "evoreg/errors.hpp"

namespace evoreg {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson rule on [a, b] with absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-10, int max_depth = 40) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Least-squares fit y ~ c0*x0 + c1*x1 with nonnegativity clamps: if a
// coefficient comes out negative it is pinned to zero and the remaining one
// refit.  Used for the empirical commutator bound (c~, d).
inline Eigen::Vector2d nonneg_ls_fit2(const Eigen::VectorXd& x0,
                                      const Eigen::VectorXd& x1,
                                      const Eigen::VectorXd& y) {
    if (x0.size() != y.size() || x1.size() != y.size())
        throw dimension_error("nonneg_ls_fit2: size mismatch");
    Eigen::MatrixXd A(y.size(), 2);
    A.col(0) = x0;
    A.col(1) = x1;
    Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
    auto fit1 = [&](const Eigen::VectorXd& x) {
        const double den = x.squaredNorm();
        return den > 0.0 ? std::max(0.0, x.dot(y) / den) : 0.0;
    };
    if (c(0) < 0.0 && c(1) < 0.0) return Eigen::Vector2d::Zero();
    if (c(0) < 0.0) return {0.0, fit1(x1)};
    if (c(1) < 0.0) return {fit1(x0), 0.0};
    return c;
}

// Slope of the least-squares line through (x_i, y_i).
inline double ls_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double xm = x.mean();
    const double ym = y.mean();
    const double num = ((x.array() - xm) * (y.array() - ym)).sum();
    const double den = (x.array() - xm).square().sum();
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace evoreg
