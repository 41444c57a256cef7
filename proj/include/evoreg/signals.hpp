#pragma once

// Deterministic signal generators: smooth resolved probes, rough L2-only
// data, and reference shapes used across the verification suites.
//
// Probe placement matters: the resolved check wants the weighted tail at the
// window end to be negligible against the signal's weighted norm, so bump
// centers default to the band [0.5, 0.62] of the window.  With rho*length
// around 20 this leaves two orders of magnitude of slack on the tail check
// while keeping e^{rho(t_end - t_c)} small enough that round-trip roundoff
// stays far below the spectral tolerances.

#include <random>

#include "evoreg/weighted_space.hpp"

namespace evoreg {

struct ProbeBand {
    double center_lo = 0.50;  // fraction of window length
    double center_hi = 0.62;
    double width_lo = 0.6;   // at the 20-unit reference window; widths scale
    double width_hi = 1.5;   // with length/20 so bumps die before the ends
    double osc_max = 3.0;    // max angular frequency of the modulating wave
    int bumps = 4;
};

// Gaussian bump amplitude * e^{-((t-center)/width)^2}.
inline Signal gaussian_bump(const TemporalGrid& g, double center, double width,
                            complex amplitude = complex(1.0, 0.0)) {
    return Signal::from_function(g, [=](double t) {
        const double s = (t - center) / width;
        return amplitude * std::exp(-s * s);
    });
}

// Random superposition of modulated Gaussian bumps, one independent draw per
// column.  Smooth, analytic, and resolved by construction for grids with
// rho * length >~ 18.
inline Signal random_smooth_signal(const TemporalGrid& g, int m, std::mt19937_64& rng,
                                   const ProbeBand& band = {}) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(g.n, m);
    const double L = g.length();
    const double wscale = L / 20.0;
    for (int c = 0; c < m; ++c) {
        for (int b = 0; b < band.bumps; ++b) {
            const double tc = g.t0 + (band.center_lo +
                                      (band.center_hi - band.center_lo) * unif(rng)) * L;
            const double w =
                (band.width_lo + (band.width_hi - band.width_lo) * unif(rng)) * wscale;
            const double om = band.osc_max * unif(rng);
            const complex amp = complex(2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0);
            for (int j = 0; j < g.n; ++j) {
                const double s = (g.t(j) - tc) / w;
                v(j, c) += amp * std::exp(-s * s) * std::exp(complex(0.0, om * (g.t(j) - tc)));
            }
        }
    }
    return Signal(g, std::move(v));
}

// As above but normalized to unit weighted L2 norm.
inline Signal random_unit_signal(const TemporalGrid& g, int m, std::mt19937_64& rng,
                                 const ProbeBand& band = {}) {
    Signal u = random_smooth_signal(g, m, rng, band);
    const double nrm = weighted_norm(u);
    if (nrm > 0.0) u.values /= nrm;
    return u;
}

// Piecewise-constant-in-time rough data: i.i.d. uniform values per node and
// column, multiplied by a fixed smooth spatial profile drawn from the same
// generator.  Only L2 in time by construction; its H^{1/2} norm diverges
// under grid refinement.  Zero before support_start.
inline Signal rough_signal(const TemporalGrid& g, int m, unsigned seed,
                           double support_start = 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd profile(m);
    for (int c = 0; c < m; ++c) profile(c) = 0.5 + 0.5 * std::abs(unif(rng));
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(g.n, m);
    for (int j = 0; j < g.n; ++j) {
        if (g.t(j) < support_start) continue;
        const double a = unif(rng);
        for (int c = 0; c < m; ++c) v(j, c) = a * profile(c);
    }
    return Signal(g, std::move(v), support_start);
}

// Indicator of [a, b] sampled with half values at nodes that land exactly on
// the jumps (midpoint convention; makes trapezoid quadrature second order).
inline Signal indicator(const TemporalGrid& g, double a, double b) {
    return Signal::from_function(g, [=](double t) {
        const double tol = 1e-12;
        if (std::abs(t - a) < tol || std::abs(t - b) < tol) return complex(0.5, 0.0);
        return (t > a && t < b) ? complex(1.0, 0.0) : complex(0.0, 0.0);
    });
}

// Smooth version of the indicator of [a, b]: 0.5*(tanh((t-a)/w) - tanh((t-b)/w)).
// Its exact causal integral has the closed form
//   (w/2)*(log cosh((t-a)/w) - log cosh((t-b)/w)) + (b-a)/2,
// which the multiplier tests use as an analytic reference.
inline Signal mollified_indicator(const TemporalGrid& g, double a, double b, double w) {
    return Signal::from_function(g, [=](double t) {
        return complex(0.5 * (std::tanh((t - a) / w) - std::tanh((t - b) / w)), 0.0);
    });
}

inline double mollified_indicator_integral(double t, double a, double b, double w) {
    auto logcosh = [](double x) {
        // log cosh x without overflow for large |x|.
        const double ax = std::abs(x);
        return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
    };
    return 0.5 * w * (logcosh((t - a) / w) - logcosh((t - b) / w)) + 0.5 * (b - a);
}

}  // namespace evoreg
