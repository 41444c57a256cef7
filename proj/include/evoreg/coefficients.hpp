#pragma once

// Coefficient operators M, N and their commutators with the half derivative.
//
// Three shapes:
//   Constant        a fixed operator (scalar or matrix), time independent
//   Multiplication  f |-> (t |-> a(t) B f(t)), pointwise in time
//   Convolution     f |-> c0 f + (T * f) with a causal kernel T(t) = k(t) B
//
// The half-derivative commutator [d^{1/2}, N] is the defect of N against the
// time derivative's square root; constants and causal convolutions commute,
// multiplication operators do not, and their commutator size is what the
// sufficient conditions below quantify:
//
//   interval condition:  sup_I (1/l(I)) Int_I Int_I |a(t)-a(s)|^2/|t-s|^2
//   fractional Sobolev:  Int Int |a(t)-a(s)|^2 / |t-s|^{2+delta}
//   admissible kernel:   T(t) selfadjoint and xi Im T^(xi - i rho0) <= d
//
// plus the closed-form identity for the weight-shift kernel
//   Int_0^inf k_{rho0-rho}(t) e^{-rho0 t} dt = sqrt(rho) - sqrt(rho0),
//   k_mu(t) = (1/2 Gamma(1/2)) t^{-3/2} (1 - e^{mu t}) on t >= 0.

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "evoreg/fractional_calculus.hpp"
#include "evoreg/numerics.hpp"
#include "evoreg/signals.hpp"

namespace evoreg {

// Scalar time profile with optional closed-form helpers.  The antiderivative
// feeds the exact forward average in regularize(); the derivative feeds the
// diagonal cells of the double-integral conditions.
struct TimeProfile {
    std::function<double(double)> value;
    std::function<double(double)> antiderivative;  // optional
    std::function<double(double)> derivative;      // optional
    std::string name;

    double operator()(double t) const { return value(t); }
};

inline TimeProfile constant_profile(double c) {
    return {[c](double) { return c; }, [c](double t) { return c * t; },
            [](double) { return 0.0; }, "constant"};
}

enum class LawKind { Constant, Multiplication, Convolution };

struct MaterialLaw {
    LawKind kind = LawKind::Constant;
    double scale = 1.0;              // Constant: the scalar operator value
    Eigen::MatrixXcd coupling;       // optional matrix factor (empty = identity)
    TimeProfile profile;             // Multiplication: a(t); Convolution: kernel k(t)
    double conv_identity = 0.0;      // Convolution: c0 in c0 + T*
    double decay_mu = 0.0;           // Convolution: exponential decay rate of k
    std::shared_ptr<MaterialLaw> derivative_law;  // optional closed-form [d_t, M]

    static MaterialLaw zero() { return constant(0.0); }

    static MaterialLaw constant(double c) {
        MaterialLaw law;
        law.kind = LawKind::Constant;
        law.scale = c;
        return law;
    }

    static MaterialLaw constant(Eigen::MatrixXcd A) {
        MaterialLaw law;
        law.kind = LawKind::Constant;
        law.coupling = std::move(A);
        return law;
    }

    static MaterialLaw multiplication(TimeProfile p, Eigen::MatrixXcd B = {}) {
        MaterialLaw law;
        law.kind = LawKind::Multiplication;
        law.profile = std::move(p);
        law.coupling = std::move(B);
        return law;
    }

    static MaterialLaw convolution(TimeProfile kernel, double mu, double identity = 0.0,
                                   Eigen::MatrixXcd B = {}) {
        MaterialLaw law;
        law.kind = LawKind::Convolution;
        law.profile = std::move(kernel);
        law.decay_mu = mu;
        law.conv_identity = identity;
        law.coupling = std::move(B);
        return law;
    }

    bool has_coupling() const { return coupling.size() > 0; }

    bool is_zero() const {
        return kind == LawKind::Constant && !has_coupling() && scale == 0.0;
    }

    double coupling_norm() const {
        if (!has_coupling()) return 1.0;
        return coupling.operatorNorm();
    }

    // sup over grid nodes of the pointwise operator norm (Multiplication) or
    // the scalar magnitude (Constant).
    double sup_norm(const TemporalGrid& g) const {
        switch (kind) {
            case LawKind::Constant:
                return std::abs(scale) * coupling_norm();
            case LawKind::Multiplication: {
                double mx = 0.0;
                for (int j = 0; j < g.n; ++j) mx = std::max(mx, std::abs(profile(g.t(j))));
                return mx * coupling_norm();
            }
            case LawKind::Convolution: {
                // L1 bound of the convolution part plus the identity shift.
                double acc = 0.0;
                for (int j = 0; j < g.n; ++j)
                    acc += g.dt * std::abs(profile(j * g.dt)) * std::exp(-g.rho * j * g.dt);
                return std::abs(conv_identity) + acc * coupling_norm();
            }
        }
        return 0.0;
    }
};

namespace detail {

inline Eigen::MatrixXcd apply_coupling(const MaterialLaw& law, const Eigen::MatrixXcd& v) {
    if (!law.has_coupling()) return v;
    if (law.coupling.cols() != v.cols())
        throw dimension_error("material law: coupling dimension mismatch");
    return v * law.coupling.transpose();
}

// Trapezoid causal convolution (T * u)_k = dt [ sum_{j=0..k} T_j u_{k-j}
// - T_0 u_k / 2 - T_k u_0 / 2 ], FFT-accelerated.
inline Eigen::MatrixXcd kernel_convolve(const Eigen::VectorXd& kernel, double dt,
                                        const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd full = causal_convolve(kernel, u);
    const int n = static_cast<int>(u.rows());
    Eigen::MatrixXcd out(n, u.cols());
    for (int k = 0; k < n; ++k)
        out.row(k) = dt * (full.row(k) - 0.5 * kernel(0) * u.row(k) -
                           0.5 * kernel(k) * u.row(0));
    return out;
}

}  // namespace detail

// Apply a coefficient operator to a signal.
inline Signal apply(const MaterialLaw& law, const Signal& u) {
    const auto& g = u.grid;
    switch (law.kind) {
        case LawKind::Constant: {
            Eigen::MatrixXcd v = detail::apply_coupling(law, u.values);
            if (!law.has_coupling()) v *= law.scale;
            return Signal(g, std::move(v), u.support_start);
        }
        case LawKind::Multiplication: {
            Eigen::MatrixXcd v = detail::apply_coupling(law, u.values);
            for (int j = 0; j < g.n; ++j) v.row(j) *= law.profile(g.t(j));
            return Signal(g, std::move(v), u.support_start);
        }
        case LawKind::Convolution: {
            Eigen::VectorXd kernel(g.n);
            for (int j = 0; j < g.n; ++j) kernel(j) = law.profile(j * g.dt);
            Eigen::MatrixXcd v =
                detail::kernel_convolve(kernel, g.dt, detail::apply_coupling(law, u.values));
            if (law.conv_identity != 0.0) v += law.conv_identity * u.values;
            // causal convolution of causal data is exactly causal; scrub the
            // FFT roundoff from the provably-zero prefix rows.
            if (u.support_start)
                for (int j = 0; j < g.n && g.t(j) < *u.support_start; ++j)
                    v.row(j).setZero();
            return Signal(g, std::move(v), u.support_start);
        }
    }
    throw material_error("apply: unknown law kind");
}

// Adjoint of the law in L_{2,rho}: conjugate profile / coupling for the
// pointwise kinds, anticausal weighted convolution for kernels.
inline Signal apply_adjoint(const MaterialLaw& law, const Signal& u) {
    const auto& g = u.grid;
    auto adjoint_coupling = [&](const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd {
        if (!law.has_coupling()) return v;
        return v * law.coupling.conjugate();
    };
    switch (law.kind) {
        case LawKind::Constant: {
            Eigen::MatrixXcd v = adjoint_coupling(u.values);
            if (!law.has_coupling()) v *= law.scale;
            return Signal(g, std::move(v));
        }
        case LawKind::Multiplication: {
            Eigen::MatrixXcd v = adjoint_coupling(u.values);
            for (int j = 0; j < g.n; ++j) v.row(j) *= law.profile(g.t(j));
            return Signal(g, std::move(v));
        }
        case LawKind::Convolution: {
            // <T*u, v>_rho = <u, S v>_rho with S the anticausal convolution
            // with kernel T(t)^H e^{-2 rho t}; realized by time reversal.
            Eigen::VectorXd kernel(g.n);
            for (int j = 0; j < g.n; ++j)
                kernel(j) = law.profile(j * g.dt) * std::exp(-2.0 * g.rho * j * g.dt);
            Eigen::MatrixXcd flipped = adjoint_coupling(u.values).colwise().reverse();
            Eigen::MatrixXcd v = detail::kernel_convolve(kernel, g.dt, flipped);
            v = v.colwise().reverse().eval();
            if (law.conv_identity != 0.0) v += law.conv_identity * u.values;
            return Signal(g, std::move(v));
        }
    }
    throw material_error("apply_adjoint: unknown law kind");
}

// [d^{1/2}, N] u = d^{1/2}(N u) - N(d^{1/2} u).
inline Signal commutator_half(const MaterialLaw& law, const Signal& u, int pad_factor = 2) {
    return frac_derivative(apply(law, u), 0.5, pad_factor) -
           apply(law, frac_derivative(u, 0.5, pad_factor));
}

struct CommutatorEstimate {
    double c_tilde = 0.0;  // H^{1/2}-relative bound
    double d = 0.0;        // L2-relative bound
    bool empirical = true;
};

// Least-squares fit of ||[d^{1/2},N]u|| <= c~ ||u||_{1/2} + d ||u||_0 over
// random smooth probes with varying frequency content.  Deterministic seed.
inline CommutatorEstimate estimate_commutator_bound(const MaterialLaw& law,
                                                    const TemporalGrid& g, int probes,
                                                    unsigned seed = 0x5eedu) {
    if (probes < 10) throw parameter_error("estimate_commutator_bound: probes must be >= 10");
    std::mt19937_64 rng(seed);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(probes);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(probes);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(probes);
    for (int i = 0; i < probes; ++i) {
        ProbeBand band;
        band.osc_max = 2.0 + 40.0 * (static_cast<double>(i) / probes);
        Signal u = random_smooth_signal(g, 1, rng, band);
        const double h_half = sobolev_norm(u, 0.5);
        if (h_half == 0.0) continue;
        u.values /= h_half;  // H^{1/2}-normalized probe
        a(i) = 1.0;
        b(i) = weighted_norm(u);
        y(i) = weighted_norm(commutator_half(law, u));
    }
    const Eigen::Vector2d fit = nonneg_ls_fit2(a, b, y);
    return CommutatorEstimate{fit(0), fit(1), true};
}

// Empirical operator norm of [d^{1/2}, N] on L_{2,rho} by power iteration on
// K*K with a randomized deterministic start.
inline double commutator_operator_norm(const MaterialLaw& law, const TemporalGrid& g,
                                       int iterations = 25, unsigned seed = 0x5eedu) {
    std::mt19937_64 rng(seed);
    Signal v = random_unit_signal(g, 1, rng);
    const double rho = g.rho;
    auto half_sym = [rho](double xi) { return std::sqrt(complex(rho, xi)); };
    auto half_adj_sym = [rho](double xi) { return std::conj(std::sqrt(complex(rho, xi))); };
    // Power iterates are not production signals; skip the tail gate.
    auto K = [&](const Signal& s) {
        return apply_multiplier(apply(law, s), half_sym, 2, false) -
               apply(law, apply_multiplier(s, half_sym, 2, false));
    };
    auto Kadj = [&](const Signal& s) {
        return apply_adjoint(law, apply_multiplier(s, half_adj_sym, 2, false)) -
               apply_multiplier(apply_adjoint(law, s), half_adj_sym, 2, false);
    };
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Signal w = Kadj(K(v));
        const double nrm = weighted_norm(w);
        if (nrm < 1e-300) return 0.0;
        lambda = weighted_inner(w, v).real();
        v = (1.0 / nrm) * w;
    }
    return std::sqrt(std::max(0.0, lambda));
}

// Forward average N_eps(t) = (1/eps) Int_t^{t+eps} N(s) ds of a
// multiplication law; exact when the profile carries an antiderivative.
inline MaterialLaw regularize(const MaterialLaw& law, double eps) {
    if (law.kind != LawKind::Multiplication)
        throw material_error("regularize: law must be a multiplication operator");
    if (!(eps > 0.0)) throw parameter_error("regularize: eps must be > 0");
    TimeProfile p = law.profile;
    TimeProfile avg;
    avg.name = p.name + "_avg";
    if (p.antiderivative) {
        auto A = p.antiderivative;
        avg.value = [A, eps](double t) { return (A(t + eps) - A(t)) / eps; };
    } else {
        auto f = p.value;
        avg.value = [f, eps](double t) {
            return adaptive_simpson([&](double s) { return f(s); }, t, t + eps, 1e-12) / eps;
        };
    }
    auto f = p.value;
    avg.derivative = [f, eps](double t) { return (f(t + eps) - f(t)) / eps; };
    return MaterialLaw::multiplication(std::move(avg), law.coupling);
}

namespace detail {

// Discrete double integral of |a(t)-a(s)|^2 * w(|t-s|) over I x I from node
// samples, with the diagonal handled by the difference-quotient limit (the
// integrand's a.e. value for Lipschitz data).
inline double interval_double_integral(const std::vector<double>& t,
                                       const std::vector<double>& a, int lo, int hi,
                                       const std::function<double(double)>& w,
                                       const std::function<double(int)>& diag) {
    double acc = 0.0;
    const int q = hi - lo + 1;
    const double dt = t[lo + 1] - t[lo];
    for (int i = 0; i < q; ++i) {
        const double wi = (i == 0 || i == q - 1) ? 0.5 * dt : dt;
        for (int j = 0; j < q; ++j) {
            const double wj = (j == 0 || j == q - 1) ? 0.5 * dt : dt;
            double val;
            if (i == j) {
                val = diag(lo + i);
            } else {
                const double diff = a[lo + i] - a[lo + j];
                val = diff * diff * w(std::abs(t[lo + i] - t[lo + j]));
            }
            acc += wi * wj * val;
        }
    }
    return acc;
}

}  // namespace detail

// Interval condition constant: max over a dyadic sweep of window intervals of
//   (1/l(I)) Int_I Int_I |a(t)-a(s)|^2 / |t-s|^2 dt ds,
// scales l = L/2^j down to intervals holding >= min_nodes nodes, positions on
// a half-overlapping lattice.
inline double check_bmo_condition(const MaterialLaw& law, const TemporalGrid& g,
                                  int min_nodes = 16) {
    if (law.kind != LawKind::Multiplication)
        throw material_error("check_bmo_condition: law must be a multiplication operator");
    std::vector<double> t(g.n), a(g.n);
    for (int j = 0; j < g.n; ++j) {
        t[j] = g.t(j);
        a[j] = law.profile(t[j]);
    }
    auto diag = [&](int i) {
        if (law.profile.derivative) {
            const double d = law.profile.derivative(t[i]);
            return d * d;
        }
        const int i0 = std::max(0, i - 1), i1 = std::min(g.n - 1, i + 1);
        const double d = (a[i1] - a[i0]) / (t[i1] - t[i0]);
        return d * d;
    };
    auto weight = [](double tau) { return 1.0 / (tau * tau); };
    const double cn = law.coupling_norm();

    double best = 0.0;
    for (int scale = g.n; scale >= min_nodes; scale /= 2) {
        const double ell = scale * g.dt;
        for (int start = 0; start + scale <= g.n; start += std::max(1, scale / 2)) {
            const double val =
                detail::interval_double_integral(t, a, start, start + scale - 1, weight, diag) /
                ell;
            best = std::max(best, val * cn * cn);
        }
    }
    return best;
}

struct FracSobolevResult {
    double value = 0.0;   // the double integral (partial sum if diverged)
    bool diverged = false;
};

// Fractional Sobolev condition: Int Int |a(t)-a(s)|^2 / |t-s|^{2+delta} over
// the window, 0 < delta < 1.  Near-diagonal strip handled analytically with
// the difference quotient; divergence is detected by shrinking the diagonal
// exclusion and watching whether shell contributions keep growing.
inline FracSobolevResult check_frac_sobolev_condition(const MaterialLaw& law,
                                                      const TemporalGrid& g, double delta) {
    if (law.kind != LawKind::Multiplication)
        throw material_error("check_frac_sobolev_condition: law must be a multiplication operator");
    if (!(delta > 0.0 && delta < 1.0))
        throw parameter_error("check_frac_sobolev_condition: delta must lie in (0,1)");

    std::vector<double> t(g.n), a(g.n);
    for (int j = 0; j < g.n; ++j) {
        t[j] = g.t(j);
        a[j] = law.profile(t[j]);
    }
    const double dt = g.dt;
    const double cn2 = law.coupling_norm() * law.coupling_norm();

    // Off-diagonal shells at |i-j| = d for d >= 1; shell(1) is the last one
    // before the analytic strip takes over.
    auto shell_sum = [&](int d) {
        double acc = 0.0;
        const double tau = d * dt;
        const double w = std::pow(tau, -(2.0 + delta));
        for (int i = 0; i + d < g.n; ++i) {
            const double diff = a[i + d] - a[i];
            acc += 2.0 * dt * dt * diff * diff * w;  // both (i,j) and (j,i)
        }
        return acc;
    };

    double total = 0.0;
    for (int d = 1; d < g.n; ++d) total += shell_sum(d);

    // Analytic diagonal strip |t-s| < dt with the difference quotient:
    // Int Int_{|t-s|<h} |a'(t)|^2 |t-s|^{-delta} ~ sum_i w_i a'_i^2 * 2 h^{1-delta}/(1-delta).
    double strip = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double der;
        if (law.profile.derivative) {
            der = law.profile.derivative(t[i]);
        } else {
            const int i0 = std::max(0, i - 1), i1 = std::min(g.n - 1, i + 1);
            der = (a[i1] - a[i0]) / (t[i1] - t[i0]);
        }
        const double wi = (i == 0 || i == g.n - 1) ? 0.5 * dt : dt;
        strip += wi * der * der;
    }
    strip *= 2.0 * std::pow(dt, 1.0 - delta) / (1.0 - delta);

    // Divergence check on the innermost shells.  For Lipschitz data the
    // shell at lag d scales like d^{-delta} (summable against the dt
    // measure); across a jump it scales like d^{-1-delta}, which is not.
    // The threshold 2^{delta + 1/2} sits between the two growth rates.
    const double s4 = shell_sum(4), s2 = shell_sum(2), s1 = shell_sum(1);
    const double thresh = std::pow(2.0, delta + 0.5);
    const bool diverged = s1 > 0.0 && s2 > 0.0 && s4 > 0.0 &&
                          (s1 / s2 > thresh && s2 / s4 > thresh);

    FracSobolevResult res;
    res.value = (total + strip) * cn2;
    res.diverged = diverged;
    return res;
}

struct AdmissibilityResult {
    double d = 0.0;  // max over the frequency grid of xi * Im T^(xi - i rho0)
    bool ok = false;
};

// Admissibility of a convolution kernel: selfadjoint values and bounded
// xi * Im T^(xi - i rho0).  The transform is the scaled FFT of the weighted
// kernel samples on an internal grid sized from the kernel's decay rate.
inline AdmissibilityResult check_admissible(const MaterialLaw& law, double rho0,
                                            int n_samples = 16384) {
    if (law.kind != LawKind::Convolution)
        throw material_error("check_admissible: law must be a convolution kernel");
    if (rho0 < law.decay_mu)
        throw parameter_error("check_admissible: rho0 must be >= the kernel decay rate");
    if (law.has_coupling()) {
        const double asym = (law.coupling - law.coupling.adjoint()).norm();
        if (asym > 1e-12 * std::max(1.0, law.coupling.norm()))
            throw admissibility_error("check_admissible: kernel is not selfadjoint");
    }

    // Window long enough that the weighted kernel has decayed to roundoff.
    const double rate = std::max(0.25, rho0 + 1e-3);
    const double smax = 40.0 / rate;
    const int N = n_samples;
    const double ds = smax / N;
    Eigen::MatrixXcd buf(N, 1);
    for (int j = 0; j < N; ++j) {
        const double s = j * ds;
        const double w = (j == 0) ? 0.5 : 1.0;  // trapezoid end correction
        buf(j, 0) = w * law.profile(s) * std::exp(-rho0 * s);
    }
    detail::fft_columns(buf, -1);

    const double scale = ds / std::sqrt(2.0 * std::numbers::pi);
    double dmax = -std::numeric_limits<double>::infinity();
    bool finite = true;
    for (int k = 0; k < N; ++k) {
        const double xi = 2.0 * std::numbers::pi *
                          (k < N - N / 2 ? k : k - N) / (N * ds);
        const complex That = scale * buf(k, 0);
        const double v = xi * That.imag();
        if (!std::isfinite(v)) finite = false;
        dmax = std::max(dmax, v);
    }
    // The scalar profile carries the time dependence; a Hermitian coupling
    // only scales Im T^ by its (real) eigenvalues, so the scalar bound with
    // the coupling norm is the worst case.
    AdmissibilityResult res;
    res.d = dmax * std::max(1.0, law.coupling_norm());
    res.ok = finite;
    return res;
}

// Quadrature of Int_0^inf k_{rho0 - rho}(t) e^{-rho0 t} dt, which the
// functional calculus pins to sqrt(rho) - sqrt(rho0).  Small t is integrated
// by series (the integrand behaves like (rho - rho0) t^{-1/2} / (2 sqrt(pi))
// near zero), the rest by adaptive quadrature.
inline double shift_commutator_kernel_integral(double rho, double rho0) {
    if (!(rho0 > 0.0) || rho0 > rho)
        throw parameter_error("shift_commutator_kernel_integral: need 0 < rho0 <= rho");
    if (rho == rho0) return 0.0;
    const double mu = rho0 - rho;  // <= 0
    const double c = 1.0 / (2.0 * std::sqrt(std::numbers::pi));

    // (1 - e^{mu t}) e^{-rho0 t} = -sum_{k>=1} c_k t^k with the first four
    // Taylor coefficients below; integrate t^{-3/2} * series on [0, eps].
    const double eps = 1e-3;
    const double c1 = -mu;
    const double c2 = -mu * mu / 2.0 + mu * rho0;
    const double c3 = -mu * mu * mu / 6.0 + mu * mu * rho0 / 2.0 - mu * rho0 * rho0 / 2.0;
    double head = c1 * std::pow(eps, 0.5) / 0.5 + c2 * std::pow(eps, 1.5) / 1.5 +
                  c3 * std::pow(eps, 2.5) / 2.5;
    head *= c;

    const double tmax = 60.0 / rho0;
    const double tail = c * adaptive_simpson(
                                [&](double t) {
                                    return std::pow(t, -1.5) *
                                           (1.0 - std::exp(mu * t)) * std::exp(-rho0 * t);
                                },
                                eps, tmax, 1e-12);
    return head + tail;
}

// --- Named profile presets (CLI-facing) -----------------------------------

// constant | arctan | tanh | jump | exp-kernel, each with shift/scale
// parameters.  arctan and tanh are centered at `center` and scaled so the
// profile stays within [offset - scale, offset + scale].
inline TimeProfile make_profile(const std::string& name, double offset, double scale,
                                double center, double width) {
    TimeProfile p;
    p.name = name;
    if (name == "constant") {
        return constant_profile(offset);
    } else if (name == "arctan") {
        p.value = [=](double t) { return offset + scale * std::atan((t - center) / width); };
        p.derivative = [=](double t) {
            const double s = (t - center) / width;
            return scale / (width * (1.0 + s * s));
        };
        p.antiderivative = [=](double t) {
            const double s = (t - center) / width;
            return offset * t +
                   scale * width * (s * std::atan(s) - 0.5 * std::log1p(s * s));
        };
        return p;
    } else if (name == "tanh") {
        p.value = [=](double t) { return offset + scale * std::tanh((t - center) / width); };
        p.derivative = [=](double t) {
            const double c = std::cosh((t - center) / width);
            return scale / (width * c * c);
        };
        p.antiderivative = [=](double t) {
            const double s = (t - center) / width;
            const double as = std::abs(s);
            const double logcosh = as + std::log1p(std::exp(-2.0 * as)) - std::log(2.0);
            return offset * t + scale * width * logcosh;
        };
        return p;
    } else if (name == "jump") {
        // offset + scale * indicator of [center, center + width]
        const double a = center, b = center + width;
        p.value = [=](double t) { return offset + (t >= a && t < b ? scale : 0.0); };
        p.antiderivative = [=](double t) {
            return offset * t + scale * (std::clamp(t, a, b) - a);
        };
        // derivative left unset: the jump has none; checkers fall back to
        // finite differences, which is exactly the divergence they probe.
        return p;
    } else if (name == "exp-kernel") {
        // scale * e^{-width * t} on t >= 0 (offset unused as value shift)
        p.value = [=](double t) { return t < 0.0 ? 0.0 : scale * std::exp(-width * t); };
        p.antiderivative = [=](double t) {
            return t < 0.0 ? 0.0 : scale / width * (1.0 - std::exp(-width * t));
        };
        p.derivative = [=](double t) {
            return t < 0.0 ? 0.0 : -scale * width * std::exp(-width * t);
        };
        return p;
    }
    throw config_error("unknown profile preset '" + name + "'");
}

}  // namespace evoreg
