#include "test_helpers.hpp"

#include "evoreg/fourier_laplace.hpp"

using namespace evoreg;
using testutil::grid_a;
using testutil::rel_l2;

TEST_CASE("zero transforms to zero and back") {
    auto g = grid_a(512);
    Signal z = Signal::zero(g, 2);
    SpectralSignal Z = forward(z);
    CHECK(Z.values.cwiseAbs().maxCoeff() == 0.0);
    Signal back = inverse(Z, g);
    CHECK(back.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Parseval identity on random resolved signals") {
    auto g = grid_a();
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Signal u = random_smooth_signal(g, 1, rng);
        const double spec = forward(u).l2_norm();
        const double time = weighted_norm(u);
        CHECK(std::abs(spec - time) < 1e-10 * time);
    }
}

TEST_CASE("forward matches direct summation of the defining integral") {
    auto g = grid_a();
    Signal u = gaussian_bump(g, 10.0, 1.0);
    SpectralSignal U = forward(u);
    const int N = U.size();
    // Direct O(nN) evaluation of dt/sqrt(2pi) * sum_j u_j e^{-(i xi + rho) t_j}
    // at five sampled frequencies inside the bump's spectral support.
    for (int s : {N / 2, N / 2 + 7, N / 2 - 13, N / 2 + 25, N / 2 - 31}) {
        const double xi = U.freqs(s);
        complex acc(0.0, 0.0);
        for (int j = 0; j < g.n; ++j)
            acc += u.values(j, 0) *
                   std::exp(complex(-g.rho * g.t(j), -xi * g.t(j)));
        acc *= g.dt / std::sqrt(2.0 * std::numbers::pi);
        CHECK(std::abs(acc - U.values(s, 0)) <= 1e-8 * std::abs(acc));
    }
}

TEST_CASE("unresolved signals are rejected with the measured tail") {
    auto g = TemporalGrid::window(0.0, 4.0, 128, 1.0);
    Signal c = Signal::from_function(g, [](double) { return complex(1.0, 0.0); });
    try {
        forward(c);
        FAIL("expected truncation_error");
    } catch (const truncation_error& e) {
        CHECK(e.tail_ratio > kTailTolerance);
    }
}

TEST_CASE("round trip is exact to spectral accuracy") {
    auto g = grid_a();
    std::mt19937_64 rng(5);
    SECTION("max-norm error below 1e-10 of the peak") {
        ProbeBand band;  // centers in [10, 12.4], widths [0.8, 1.4]
        band.center_lo = 0.50;
        band.center_hi = 0.62;
        band.width_lo = 0.8;
        band.width_hi = 1.4;
        for (int i = 0; i < 10; ++i) {
            Signal u = random_smooth_signal(g, 1, rng, band);
            Signal rt = inverse(forward(u), g);
            const double err = (rt.values - u.values).cwiseAbs().maxCoeff();
            CHECK(err < 1e-10 * u.values.cwiseAbs().maxCoeff());
        }
    }
    SECTION("support markers survive with tiny leakage") {
        Signal u = Signal::from_function(
            g,
            [](double t) {
                if (t < 8.0) return complex(0.0, 0.0);
                const double s = t - 8.0;
                return complex(s * s * std::exp(-2.0 * (t - 10.0) * (t - 10.0)), 0.0);
            },
            8.0);
        Signal rt = inverse(forward(u), g);
        double leak = 0.0;
        for (int j = 0; j < g.n && g.t(j) < 8.0; ++j)
            leak = std::max(leak, std::abs(rt.values(j, 0)));
        CHECK(leak < 1e-9 * u.values.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("grid mismatch on inverse is a dimension error") {
    auto g = grid_a(512);
    Signal u = Signal::zero(g, 1);
    SpectralSignal U = forward(u);
    auto g2 = TemporalGrid::window(0.0, 20.0, 320, 1.0);
    CHECK_THROWS_AS(inverse(U, g2), dimension_error);
    auto g3 = TemporalGrid::window(0.0, 20.0, 512, 2.0);
    CHECK_THROWS_AS(inverse(U, g3), dimension_error);
}

TEST_CASE("multiplier calculus") {
    auto g = grid_a();
    std::mt19937_64 rng(31);
    Signal u = random_smooth_signal(g, 1, rng);
    const double rho = g.rho;

    SECTION("identity symbol is the identity") {
        Signal v = apply_multiplier(u, [](double) { return complex(1.0, 0.0); });
        CHECK(rel_l2(v, u) < 1e-10);
    }
    SECTION("it is linear") {
        std::mt19937_64 rng2(37);
        Signal w = random_smooth_signal(g, 1, rng2);
        auto sym = [rho](double xi) { return complex(rho, xi) * complex(0.3, 0.1); };
        Signal lhs = apply_multiplier(u + w, sym);
        Signal rhs = apply_multiplier(u, sym) + apply_multiplier(w, sym);
        CHECK(rel_l2(lhs, rhs) < 1e-12);
    }
    SECTION("derivative symbol matches centered differences, improving under refinement") {
        double prev = 0.0;
        for (int level = 0; level < 2; ++level) {
            auto gl = grid_a(level == 0 ? 1024 : 2048);
            Signal ul = gaussian_bump(gl, 10.0, 1.0);
            Signal du = apply_multiplier(
                ul, [rho](double xi) { return complex(rho, xi); });
            // centered differences of the nodal values (interior nodes)
            Eigen::MatrixXcd fd = Eigen::MatrixXcd::Zero(gl.n, 1);
            for (int j = 1; j + 1 < gl.n; ++j)
                fd(j, 0) = (ul.values(j + 1, 0) - ul.values(j - 1, 0)) / (2.0 * gl.dt);
            Signal fds(gl, fd);
            double num = 0.0, den = 0.0;
            for (int j = 1; j + 1 < gl.n; ++j) {
                const double w = gl.dt * std::exp(-2.0 * rho * gl.t(j));
                num += w * std::norm(du.values(j, 0) - fd(j, 0));
                den += w * std::norm(du.values(j, 0));
            }
            const double rel = std::sqrt(num / den);
            if (level == 0) {
                CHECK(rel < 1e-3);
                prev = rel;
            } else {
                CHECK(rel < 0.5 * prev);  // second-order differences
            }
        }
    }
    SECTION("inverse-derivative symbol integrates causally (closed form)") {
        // Smooth step on [2, 3]; the exact running integral has a log-cosh
        // closed form.
        auto gg = TemporalGrid::window(0.0, 20.0, 4096, 1.0);
        const double w = 0.15;
        Signal step = mollified_indicator(gg, 2.0, 3.0, w);
        Signal integ = apply_multiplier(
            step, [&](double xi) { return 1.0 / complex(gg.rho, xi); });
        Eigen::MatrixXcd want(gg.n, 1);
        for (int j = 0; j < gg.n; ++j)
            want(j, 0) = mollified_indicator_integral(gg.t(j), 2.0, 3.0, w);
        CHECK(rel_l2(integ, Signal(gg, want)) < 1e-6);
    }
    SECTION("non-finite symbols are rejected") {
        CHECK_THROWS_AS(apply_multiplier(u,
                                         [](double xi) {
                                             return xi == 0.0
                                                        ? complex(std::nan(""), 0.0)
                                                        : complex(1.0, 0.0);
                                         }),
                        symbol_error);
    }
}

TEST_CASE("spectrum of the derivative stays off zero and the adjoint identity holds") {
    auto g = grid_a();
    const double rho = g.rho;
    SECTION("min |i xi + rho| = rho > 0 on the grid") {
        Signal u = gaussian_bump(g, 10.0, 1.0);
        SpectralSignal U = forward(u);
        double mn = std::numeric_limits<double>::infinity();
        for (int s = 0; s < U.size(); ++s)
            mn = std::min(mn, std::abs(complex(rho, U.freqs(s))));
        CHECK(mn >= rho - 1e-15);
        // hence the inverse symbol is well-defined everywhere
        Signal v = apply_multiplier(u, [rho](double xi) { return 1.0 / complex(rho, xi); });
        CHECK(std::isfinite(weighted_norm(v)));
    }
    SECTION("d* = -d + 2 rho against the weighted inner product") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 25; ++i) {
            Signal u = random_smooth_signal(g, 1, rng);
            Signal v = random_smooth_signal(g, 1, rng);
            auto D = [rho](const Signal& s) {
                return apply_multiplier(s, [rho](double xi) { return complex(rho, xi); });
            };
            const complex lhs = weighted_inner(D(u), v);
            const complex rhs = weighted_inner(u, -1.0 * D(v) + (2.0 * rho) * v);
            CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(lhs));
        }
    }
}
