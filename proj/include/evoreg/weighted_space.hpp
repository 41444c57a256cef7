#pragma once

// Exponentially weighted time grids and signals.
//
// The ambient space is L_{2,rho}(R;H): H-valued functions on the real line,
// square integrable against the weight e^{-2*rho*t} with rho > 0.  Discretely
// a signal lives on a uniform window [t0, t0 + n*dt) and is treated as zero
// outside; the "resolved" check makes that truncation auditable per signal.
//
//   <u,v>_{rho,0} = Int <u(t),v(t)>_H e^{-2 rho t} dt     (trapezoid here)
//   ||u||_{p,rho} = (Int ||u(t)||^p e^{-p rho t} dt)^{1/p}
//
// Norm quadrature is plain trapezoid: spectral accuracy lives in the
// Fourier-Laplace layer, and resolved signals vanish at the window ends so
// the endpoint halving is immaterial for them.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "evoreg/errors.hpp"

namespace evoreg {

using complex = std::complex<double>;

// Default tail tolerance for the resolved check.
inline constexpr double kTailTolerance = 1e-12;

struct TemporalGrid {
    double t0 = 0.0;   // window start
    double dt = 0.0;   // step, > 0
    int n = 0;         // samples, >= 2
    double rho = 0.0;  // exponential weight, > 0

    TemporalGrid() = default;
    TemporalGrid(double t0_, double dt_, int n_, double rho_)
        : t0(t0_), dt(dt_), n(n_), rho(rho_) {
        if (!(dt > 0.0)) throw parameter_error("TemporalGrid: dt must be > 0");
        if (n < 2) throw parameter_error("TemporalGrid: n must be >= 2");
        if (!(rho > 0.0)) throw parameter_error("TemporalGrid: rho must be > 0");
    }

    // Convenience: grid covering [t0, t_end) with n samples.
    static TemporalGrid window(double t0, double t_end, int n, double rho) {
        return TemporalGrid(t0, (t_end - t0) / n, n, rho);
    }

    double t(int j) const { return t0 + j * dt; }
    double t_end() const { return t0 + n * dt; }
    double length() const { return n * dt; }

    bool same_as(const TemporalGrid& o, double tol = 1e-12) const {
        return n == o.n && std::abs(t0 - o.t0) <= tol && std::abs(dt - o.dt) <= tol &&
               std::abs(rho - o.rho) <= tol;
    }
};

// An H-valued function of time sampled on a weighted grid.  values is n x m,
// one column per spatial degree of freedom.  support_start is an optional
// causality marker: samples strictly before it must be exactly zero.
struct Signal {
    TemporalGrid grid;
    Eigen::MatrixXcd values;
    std::optional<double> support_start;

    Signal() = default;
    Signal(TemporalGrid g, Eigen::MatrixXcd v,
           std::optional<double> support = std::nullopt)
        : grid(g), values(std::move(v)), support_start(support) {
        if (values.rows() != grid.n)
            throw dimension_error("Signal: values rows must equal grid.n");
        if (!values.allFinite()) throw parameter_error("Signal: values must be finite");
        if (support_start) {
            for (int j = 0; j < grid.n && grid.t(j) < *support_start; ++j)
                if (values.row(j).cwiseAbs().maxCoeff() != 0.0)
                    throw parameter_error(
                        "Signal: nonzero sample before support_start");
        }
    }

    int m() const { return static_cast<int>(values.cols()); }

    static Signal zero(const TemporalGrid& g, int m) {
        return Signal(g, Eigen::MatrixXcd::Zero(g.n, m));
    }

    // Scalar signal from a function of time.
    static Signal from_function(const TemporalGrid& g,
                                const std::function<complex(double)>& f,
                                std::optional<double> support = std::nullopt) {
        Eigen::MatrixXcd v(g.n, 1);
        for (int j = 0; j < g.n; ++j) v(j, 0) = f(g.t(j));
        return Signal(g, std::move(v), support);
    }
};

namespace detail {

// Trapezoid weight of node j on an n-node window.
inline double trap_weight(int j, int n, double dt) {
    return (j == 0 || j == n - 1) ? 0.5 * dt : dt;
}

inline void require_compatible(const Signal& u, const Signal& v) {
    if (!u.grid.same_as(v.grid) || u.m() != v.m())
        throw dimension_error("signals live on different grids or dimensions");
}

}  // namespace detail

// <u,v>_{rho,0}, linear in u, conjugate-linear in v.
inline complex weighted_inner(const Signal& u, const Signal& v) {
    detail::require_compatible(u, v);
    const auto& g = u.grid;
    complex acc(0.0, 0.0);
    for (int j = 0; j < g.n; ++j) {
        const double w = detail::trap_weight(j, g.n, g.dt) * std::exp(-2.0 * g.rho * g.t(j));
        // Eigen's dot conjugates its first argument, so v.dot(u) = sum conj(v)*u.
        acc += w * v.values.row(j).dot(u.values.row(j));
    }
    return acc;
}

inline double weighted_norm(const Signal& u) {
    return std::sqrt(std::max(0.0, weighted_inner(u, u).real()));
}

// ||u||_{p,rho} = (Int ||u(t)||^p e^{-p rho t} dt)^{1/p} for p >= 2.
inline double weighted_lp_norm(const Signal& u, double p) {
    if (!(p >= 2.0) || !std::isfinite(p))
        throw parameter_error("weighted_lp_norm: p must be finite and >= 2");
    const auto& g = u.grid;
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double w = detail::trap_weight(j, g.n, g.dt) * std::exp(-p * g.rho * g.t(j));
        acc += w * std::pow(u.values.row(j).norm(), p);
    }
    return std::pow(acc, 1.0 / p);
}

// max_j ||u(t_j)||_H over the window.
inline double max_node_norm(const Signal& u) {
    double m = 0.0;
    for (int j = 0; j < u.grid.n; ++j) m = std::max(m, u.values.row(j).norm());
    return m;
}

// Tail ratio e^{-2 rho t_end} * max||u|| / ||u||_{rho,0}.  A signal is
// resolved on its window when this is below the tail tolerance: the weighted
// mass the truncation could hide beyond t_end is then negligible.
inline double tail_ratio(const Signal& u) {
    const double mx = max_node_norm(u);
    if (mx == 0.0) return 0.0;
    const double nrm = weighted_norm(u);
    if (nrm == 0.0) return std::numeric_limits<double>::infinity();
    return std::exp(-2.0 * u.grid.rho * u.grid.t_end()) * mx / nrm;
}

inline bool is_resolved(const Signal& u, double tol = kTailTolerance) {
    return tail_ratio(u) <= tol;
}

// Arithmetic helpers (same grid required).
inline Signal operator+(const Signal& u, const Signal& v) {
    detail::require_compatible(u, v);
    return Signal(u.grid, u.values + v.values);
}

inline Signal operator-(const Signal& u, const Signal& v) {
    detail::require_compatible(u, v);
    return Signal(u.grid, u.values - v.values);
}

inline Signal operator*(complex a, const Signal& u) {
    return Signal(u.grid, a * u.values, u.support_start);
}

inline Signal operator*(double a, const Signal& u) {
    return complex(a, 0.0) * u;
}

}  // namespace evoreg
