#pragma once

// Unitary Fourier-Laplace transform and frequency multipliers.
//
//   (L_rho u)(xi) = (1/sqrt(2 pi)) Int e^{-(i xi + rho) t} u(t) dt
//
// Discretely: weight by e^{-rho t}, zero-pad by pad_factor, FFT, and scale by
// dt * e^{-i xi t0} / sqrt(2 pi).  Angular frequencies xi_k = 2 pi k/(N dt)
// with k centered; spectra are stored with ascending frequencies.  The
// scaling makes the discrete Parseval identity exact:
//
//   sum_k ||U_k||^2 dxi = sum_j ||u_j e^{-rho t_j}||^2 dt,
//
// which is the rectangle-rule weighted L2 norm; for resolved signals it
// agrees with the trapezoid norm to machine precision.  The time derivative
// d_{t,rho} is the multiplier (i xi + rho), which never vanishes on the grid
// because rho > 0.
//
// FFTW is used for the DFT kernel only (FFTW_ESTIMATE plans, created per
// call; the planner is not thread-safe, keep transforms on one thread).

#include <cmath>
#include <functional>
#include <numbers>

#include <fftw3.h>

#include "evoreg/weighted_space.hpp"

namespace evoreg {

struct SpectralSignal {
    Eigen::VectorXd freqs;    // ascending angular frequencies, length N
    Eigen::MatrixXcd values;  // N x m
    double rho = 0.0;

    int size() const { return static_cast<int>(freqs.size()); }
    int m() const { return static_cast<int>(values.cols()); }

    double delta_xi() const {
        return size() >= 2 ? freqs(1) - freqs(0) : 0.0;
    }

    // sqrt(sum_k ||U_k||^2 dxi); equals the weighted L2 norm of the
    // originating signal by Parseval.
    double l2_norm() const {
        return std::sqrt(values.squaredNorm() * delta_xi());
    }
};

namespace detail {

// In-place complex FFT on each column of a buffer (sign -1: e^{-2 pi i jk/N}).
inline void fft_columns(Eigen::MatrixXcd& buf, int sign) {
    const int n = static_cast<int>(buf.rows());
    const int m = static_cast<int>(buf.cols());
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = fftw_plan_many_dft(1, &n, m, data, nullptr, 1, n, data, nullptr,
                                        1, n, sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

// Map raw DFT bin k (0..N-1) to the centered index of its frequency.
inline int centered_index(int k, int N) { return k < N - N / 2 ? k + N / 2 : k - (N - N / 2); }

}  // namespace detail

// Zero-padded discrete Fourier-Laplace transform of a resolved signal.
// require_resolved = false skips the tail gate; internal estimators that
// iterate arbitrary signals use it, public callers should not.
inline SpectralSignal forward(const Signal& u, int pad_factor = 2,
                              bool require_resolved = true) {
    if (pad_factor < 2) throw parameter_error("forward: pad_factor must be >= 2");
    if (require_resolved) {
        const double tail = tail_ratio(u);
        if (tail > kTailTolerance)
            throw truncation_error("forward: signal not resolved on its window", tail);
    }

    const auto& g = u.grid;
    const int N = pad_factor * g.n;
    const double dxi = 2.0 * std::numbers::pi / (N * g.dt);

    Eigen::MatrixXcd buf = Eigen::MatrixXcd::Zero(N, u.m());
    for (int j = 0; j < g.n; ++j)
        buf.row(j) = u.values.row(j) * std::exp(-g.rho * g.t(j));
    detail::fft_columns(buf, -1);

    SpectralSignal U;
    U.rho = g.rho;
    U.freqs.resize(N);
    U.values.resize(N, u.m());
    const double scale = g.dt / std::sqrt(2.0 * std::numbers::pi);
    for (int k = 0; k < N; ++k) {
        const int s = detail::centered_index(k, N);
        const double xi = (s - N / 2) * dxi;
        U.freqs(s) = xi;
        U.values.row(s) = buf.row(k) * (scale * std::exp(complex(0.0, -xi * g.t0)));
    }
    return U;
}

// Inverse transform back onto a compatible grid (adjoint of forward under the
// discrete Parseval pairing; exact round trip up to roundoff).
inline Signal inverse(const SpectralSignal& U, const TemporalGrid& grid) {
    const int N = U.size();
    if (N % grid.n != 0 || N / grid.n < 2)
        throw dimension_error("inverse: spectrum length is not a padded multiple of grid.n");
    if (std::abs(U.rho - grid.rho) > 1e-12)
        throw dimension_error("inverse: rho mismatch between spectrum and grid");
    const double dxi = 2.0 * std::numbers::pi / (N * grid.dt);
    if (std::abs(U.delta_xi() - dxi) > 1e-9 * dxi ||
        std::abs(U.freqs(0) + (N / 2) * dxi) > 1e-9 * dxi)
        throw dimension_error("inverse: frequency grid incompatible with time grid");

    Eigen::MatrixXcd buf(N, U.m());
    const double unscale = std::sqrt(2.0 * std::numbers::pi) / grid.dt;
    for (int s = 0; s < N; ++s) {
        const int k = s < N / 2 ? s + (N - N / 2) : s - N / 2;  // undo centering
        const double xi = U.freqs(s);
        buf.row(k) = U.values.row(s) * (unscale * std::exp(complex(0.0, xi * grid.t0)));
    }
    detail::fft_columns(buf, +1);

    Eigen::MatrixXcd out(grid.n, U.m());
    for (int j = 0; j < grid.n; ++j)
        out.row(j) = buf.row(j) * (std::exp(grid.rho * grid.t(j)) / N);
    return Signal(grid, std::move(out));
}

// inverse(symbol(xi) . forward(u)); linear in u.
inline Signal apply_multiplier(const Signal& u,
                               const std::function<complex(double)>& symbol,
                               int pad_factor = 2, bool require_resolved = true) {
    SpectralSignal U = forward(u, pad_factor, require_resolved);
    for (int s = 0; s < U.size(); ++s) {
        const complex val = symbol(U.freqs(s));
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw symbol_error("apply_multiplier: symbol not finite at grid frequency " +
                               std::to_string(U.freqs(s)));
        U.values.row(s) *= val;
    }
    return inverse(U, u.grid);
}

}  // namespace evoreg
