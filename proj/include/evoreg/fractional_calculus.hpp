#pragma once

// Fractional powers of the weighted time derivative.
//
// Spectral (production) path:
//   d^alpha_{t,rho} = L*_rho (i xi + rho)^alpha L_rho,
// principal branch; safe because Re(i xi + rho) = rho > 0, so no branch cut
// is crossed and the symbol is continuous in xi.
//
// Convolution (oracle) paths:
//   (d^{-alpha} f)(t) = (1/Gamma(alpha)) Int_{-inf}^t (t-s)^{alpha-1} f(s) ds
//   (d^{1/2} phi)(t)  = (1/(2 Gamma(1/2))) Int_{-inf}^t (t-s)^{-3/2} (phi(t)-phi(s)) ds
// both realized with product integration: the kernel moments are integrated
// exactly per cell against the piecewise-linear interpolant of the samples,
// which is what survives the kernel singularity at s = t.
//
// Sobolev norms: ||u||_{rho,alpha} = || |i xi + rho|^alpha L_rho u ||_2.

#include <cmath>
#include <numbers>

#include "evoreg/fourier_laplace.hpp"

namespace evoreg {

namespace detail {

// Fraction of spectral energy above 0.9 * Nyquist; the discrete stand-in for
// "the result still lives in the grid's resolved band".
inline double high_freq_fraction(const SpectralSignal& U) {
    const double total = U.values.squaredNorm();
    if (total == 0.0) return 0.0;
    const double cut = 0.9 * U.freqs.cwiseAbs().maxCoeff();
    double high = 0.0;
    for (int s = 0; s < U.size(); ++s)
        if (std::abs(U.freqs(s)) > cut) high += U.values.row(s).squaredNorm();
    return high / total;
}

// Causal linear convolution of each signal column with a fixed real weight
// sequence (length n), via zero-padded FFT.
inline Eigen::MatrixXcd causal_convolve(const Eigen::VectorXd& weights,
                                        const Eigen::MatrixXcd& u) {
    const int n = static_cast<int>(u.rows());
    const int N = 2 * n;
    Eigen::MatrixXcd wbuf = Eigen::MatrixXcd::Zero(N, 1);
    wbuf.col(0).head(n) = weights.cast<complex>();
    fft_columns(wbuf, -1);
    Eigen::MatrixXcd ubuf = Eigen::MatrixXcd::Zero(N, u.cols());
    ubuf.topRows(n) = u;
    fft_columns(ubuf, -1);
    for (int c = 0; c < ubuf.cols(); ++c)
        ubuf.col(c) = ubuf.col(c).cwiseProduct(wbuf.col(0));
    fft_columns(ubuf, +1);
    return ubuf.topRows(n) / static_cast<double>(N);
}

}  // namespace detail

// Spectral fractional derivative of order alpha (any real; admissible range
// exercised here is [-1, 3/2]).  For alpha > 0 the result must remain inside
// the resolved band, else the input was not in the discrete H^alpha.
inline Signal frac_derivative(const Signal& u, double alpha, int pad_factor = 2) {
    if (alpha == 0.0) return Signal(u.grid, u.values, u.support_start);
    SpectralSignal U = forward(u, pad_factor);
    const double rho = u.grid.rho;
    for (int s = 0; s < U.size(); ++s)
        U.values.row(s) *= std::pow(complex(rho, U.freqs(s)), alpha);
    if (alpha > 0.0) {
        const double frac = detail::high_freq_fraction(U);
        if (frac > 0.01)
            throw regularity_error(
                "frac_derivative: result has " + std::to_string(100.0 * frac) +
                "% energy above 0.9*Nyquist; signal not in discrete H^alpha");
    }
    return inverse(U, u.grid);
}

// Riemann-Liouville integral of order alpha in (0, 1]: causal convolution
// with t^{alpha-1}/Gamma(alpha), product integration exact for the
// piecewise-linear interpolant (zero-extended outside the window).
inline Signal rl_integral(const Signal& u, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw parameter_error("rl_integral: alpha must lie in (0, 1]");
    const double tail = tail_ratio(u);
    if (tail > kTailTolerance)
        throw truncation_error("rl_integral: signal not resolved on its window", tail);

    const auto& g = u.grid;
    const int n = g.n;
    const double dt = g.dt;
    // Cell d covers tau in [(d-1)dt, d dt]; a_d multiplies the lower node,
    // b_d the upper.  Collapsing onto nodes gives weights W_e = a_e + b_{e+1}.
    Eigen::VectorXd a(n + 2), b(n + 2);
    a(0) = b(0) = 0.0;
    for (int d = 1; d <= n + 1; ++d) {
        const double t1 = (d - 1) * dt, t2 = d * dt;
        const double m0 = (std::pow(t2, alpha) - std::pow(t1, alpha)) / alpha;
        const double m1 = (std::pow(t2, alpha + 1.0) - std::pow(t1, alpha + 1.0)) / (alpha + 1.0);
        a(d) = (m1 - t1 * m0) / dt;
        b(d) = (t2 * m0 - m1) / dt;
    }
    Eigen::VectorXd W(n);
    for (int e = 0; e < n; ++e) W(e) = a(e) + b(e + 1);
    Eigen::MatrixXcd out =
        detail::causal_convolve(W, u.values) / std::tgamma(alpha);
    return Signal(g, std::move(out));
}

// Singular-integral representation of the half derivative.  Product
// integration with the same piecewise-linear interpolant; in the singular
// cell s in (t-dt, t) the difference phi(t)-phi(s) is replaced by its linear
// interpolant so the integrand becomes (t-s)^{-1/2} * slope, integrated
// analytically.  For s < t0 the signal is extended by its first sample, so
// the operator annihilates constants exactly and agrees with the
// zero-extension for causal data.
inline Signal half_derivative_singular(const Signal& u) {
    const double tail = tail_ratio(u);
    if (tail > kTailTolerance)
        throw truncation_error("half_derivative_singular: signal not resolved", tail);

    const auto& g = u.grid;
    const int n = g.n;
    const double dt = g.dt;
    const double c_half = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    const double inv_sqrt_dt = 1.0 / std::sqrt(dt);

    // Kernel moments for tau^{-3/2} over cells d >= 2.
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n + 2), b = Eigen::VectorXd::Zero(n + 2);
    for (int d = 2; d <= n + 1; ++d) {
        const double t1 = (d - 1) * dt, t2 = d * dt;
        const double m0 = 2.0 * (1.0 / std::sqrt(t1) - 1.0 / std::sqrt(t2));
        const double m1 = 2.0 * (std::sqrt(t2) - std::sqrt(t1));
        a(d) = (m1 - t1 * m0) / dt;
        b(d) = (t2 * m0 - m1) / dt;
    }
    Eigen::VectorXd V = Eigen::VectorXd::Zero(n);
    for (int e = 1; e < n; ++e) V(e) = a(e) + b(e + 1);
    Eigen::MatrixXcd conv = detail::causal_convolve(V, u.values);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, u.m());
    for (int k = 1; k < n; ++k) {
        // kernel mass of cells d = 2..k against phi(t_k): telescopes.
        const double Sk = 2.0 * (1.0 - 1.0 / std::sqrt(static_cast<double>(k))) * inv_sqrt_dt;
        const double tailw = 2.0 / std::sqrt(k * dt);
        // The fixed-kernel convolution reaches one cell left of the window
        // (coefficient b_{k+1} against u_0); that region belongs to the
        // analytic tail term, so remove it before adding the tail.
        out.row(k) = c_half * (u.values.row(k) * Sk - conv.row(k) +
                               u.values.row(0) * b(k + 1) +
                               (u.values.row(k) - u.values.row(k - 1)) * (2.0 * inv_sqrt_dt) +
                               (u.values.row(k) - u.values.row(0)) * tailw);
    }
    return Signal(g, std::move(out));
}

// (1 + eps * d_{t,rho})^{-1}: contraction with operator norm <= 1.
inline Signal smoothing_resolvent(const Signal& u, double eps, int pad_factor = 2) {
    if (!(eps > 0.0)) throw parameter_error("smoothing_resolvent: eps must be > 0");
    SpectralSignal U = forward(u, pad_factor);
    const double in_norm = U.l2_norm();
    const double rho = u.grid.rho;
    for (int s = 0; s < U.size(); ++s)
        U.values.row(s) /= complex(1.0 + eps * rho, eps * U.freqs(s));
    if (U.l2_norm() > in_norm + 1e-12)
        throw solver_error("smoothing_resolvent: contraction property violated");
    return inverse(U, u.grid);
}

// ||u||_{rho,alpha} in Plancherel form, alpha >= 0.
inline double sobolev_norm(const Signal& u, double alpha, int pad_factor = 2) {
    if (alpha < 0.0) throw parameter_error("sobolev_norm: alpha must be >= 0");
    SpectralSignal U = forward(u, pad_factor);
    const double rho = u.grid.rho;
    double acc = 0.0;
    for (int s = 0; s < U.size(); ++s)
        acc += std::pow(std::hypot(rho, U.freqs(s)), 2.0 * alpha) *
               U.values.row(s).squaredNorm();
    return std::sqrt(acc * U.delta_xi());
}

}  // namespace evoreg
