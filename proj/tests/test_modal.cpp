#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "voigt/errors.hpp"
#include "voigt/modal.hpp"
#include "voigt/oracle.hpp"

using namespace voigt;

namespace {

const StripConfig kCfg{0.1, 1.0, std::numbers::pi, 1.0};

std::vector<double> time_grid(int count, double t_max) {
    std::vector<double> ts(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) ts[static_cast<size_t>(j)] = t_max * j / (count - 1);
    ts.front() = 0.0;
    ts.back() = t_max;
    return ts;
}

/// max_t |h - reference| / max_t |reference|
double trajectory_rel_error(const ModeParams& p, const OdeTrajectory& ref,
                            const std::vector<double>& ts) {
    double worst = 0.0, scale = 0.0;
    for (size_t j = 0; j < ts.size(); ++j) {
        const KernelValue kv = kernel_h(p, ts[j]);
        worst = std::max(worst, std::abs(kv.h - ref.value[j]));
        scale = std::max(scale, std::abs(ref.value[j]));
    }
    return worst / scale;
}

} // namespace

TEST_CASE("mode_params derived quantities and regimes") {
    const ModeParams p5 = mode_params(kCfg, 5);
    CHECK(p5.k == doctest::Approx(20.0).epsilon(1e-13));
    CHECK(p5.ratio == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(p5.discriminant == doctest::Approx(-15.0).epsilon(1e-12));
    CHECK(p5.regime == Regime::Oscillatory);
    CHECK(p5.gamma_n == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(p5.b == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(p5.b == doctest::Approx(p5.q * kCfg.epsilon).epsilon(1e-14));

    const ModeParams p20 = mode_params(kCfg, 20);
    CHECK(std::abs(p20.discriminant) < 1e-12);
    CHECK(p20.regime == Regime::Critical);

    const ModeParams p40 = mode_params(kCfg, 40);
    CHECK(p40.ratio == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(p40.discriminant == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(p40.regime == Regime::Hyperbolic);

    CHECK(n_split(kCfg) == 20);
    CHECK(n_alpha(kCfg, 0.8) == static_cast<int>(std::floor(2.0 / std::pow(0.1, 0.8))));
    CHECK_THROWS_AS(n_alpha(kCfg, 0.4), InvalidAlpha);
    CHECK_THROWS_AS(n_alpha(kCfg, 1.1), InvalidAlpha);
}

TEST_CASE("kernel initial conditions are exact in every regime") {
    for (int n : {1, 5, 19, 20, 21, 40, 200}) {
        const ModeParams p = mode_params(kCfg, n);
        const KernelValue kv = kernel_h(p, 0.0);
        CHECK(kv.h == 0.0);
        CHECK(kv.h_prime == 1.0);
        CHECK(kernel_g1(p, 0.0) == 1.0);
    }
    CHECK_THROWS_AS(kernel_h(mode_params(kCfg, 3), -0.5), NegativeTime);
}

TEST_CASE("critical mode closed form t*exp(-2c^2 t/eps)") {
    const ModeParams p = mode_params(kCfg, 20);
    REQUIRE(p.regime == Regime::Critical);
    const double rate = 2.0 * kCfg.c * kCfg.c / kCfg.epsilon; // = 20
    for (double t : time_grid(101, 1.0)) {
        const double expected = t * std::exp(-rate * t);
        const double got = kernel_h(p, t).h;
        if (expected == 0.0) {
            CHECK(got == 0.0);
        } else {
            CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected));
        }
    }
    CHECK(kernel_h(p, 0.1).h == doctest::Approx(0.1 * std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("kernel_h matches the adaptive ODE oracle across regimes") {
    const std::vector<double> ts = time_grid(64, 1.0);
    for (int n : {1, 5, 19, 20, 21, 40, 50}) {
        const ModeParams p = mode_params(kCfg, n);
        OdeProblem ode;
        ode.damping = kCfg.epsilon * p.gamma_n * p.gamma_n;
        ode.stiffness = kCfg.c * kCfg.c * p.gamma_n * p.gamma_n;
        ode.initial_value = 0.0;
        ode.initial_velocity = 1.0;
        const OdeTrajectory ref = integrate_mode(ode, ts);
        CHECK(trajectory_rel_error(p, ref, ts) <= 1e-9);
    }
}

TEST_CASE("kernel_g1 matches the oracle with IC (1,0)") {
    const std::vector<double> ts = time_grid(48, 1.0);
    for (int n : {1, 7, 20, 21, 35}) {
        const ModeParams p = mode_params(kCfg, n);
        OdeProblem ode;
        ode.damping = kCfg.epsilon * p.gamma_n * p.gamma_n;
        ode.stiffness = kCfg.c * kCfg.c * p.gamma_n * p.gamma_n;
        ode.initial_value = 1.0;
        ode.initial_velocity = 0.0;
        const OdeTrajectory ref = integrate_mode(ode, ts);
        double worst = 0.0, scale = 0.0;
        for (size_t j = 0; j < ts.size(); ++j) {
            worst = std::max(worst, std::abs(kernel_g1(p, ts[j]) - ref.value[j]));
            scale = std::max(scale, std::abs(ref.value[j]));
        }
        CHECK(worst / scale <= 1e-9);
    }
}

TEST_CASE("kernel_g1_prime identity -c^2 gamma^2 H") {
    for (int n : {2, 20, 30}) {
        const ModeParams p = mode_params(kCfg, n);
        for (double t : {0.1, 0.6}) {
            const double step = 1e-4;
            const double fd = (kernel_g1(p, t + step) - kernel_g1(p, t - step)) / (2.0 * step);
            CHECK(kernel_g1_prime(p, t) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("kernel_g1 undamped limit is the cosine") {
    StripConfig cfg = kCfg;
    cfg.epsilon = 1e-8;
    for (int n : {1, 2, 5}) {
        const ModeParams p = mode_params(cfg, n);
        for (double t : {0.1, 0.4, 0.9}) {
            CHECK(std::abs(kernel_g1(p, t) - std::cos(cfg.c * p.gamma_n * t)) <= 1e-6);
        }
    }
}

TEST_CASE("kernel_h undamped limit converges at first order in epsilon") {
    const int n = 3;
    const double t = 0.6;
    std::vector<double> eps_list{0.02, 0.01, 0.005, 0.0025};
    std::vector<double> devs;
    for (double eps : eps_list) {
        StripConfig cfg = kCfg;
        cfg.epsilon = eps;
        const ModeParams p = mode_params(cfg, n);
        const double undamped = std::sin(cfg.c * p.gamma_n * t) / (cfg.c * p.gamma_n);
        devs.push_back(std::abs(kernel_h(p, t).h - undamped));
    }
    for (size_t i = 0; i + 1 < devs.size(); ++i) {
        const double slope = std::log2(devs[i] / devs[i + 1]);
        CHECK(slope == doctest::Approx(1.0).epsilon(0.15));
    }
    CHECK(devs.back() <= 1.0 * eps_list.back()); // |H - sin| <= K eps with modest K
}

TEST_CASE("mode decay bound dominates |H_n| for overdamped modes") {
    const int split = n_split(kCfg);
    for (int n = split + 1; n <= split + 50; ++n) {
        const ModeParams p = mode_params(kCfg, n);
        REQUIRE(p.regime == Regime::Hyperbolic);
        for (double t : {0.0, 0.01, 0.1, 1.0}) {
            CHECK(std::abs(kernel_h(p, t).h) <= mode_decay_bound(p, t));
        }
    }
}

TEST_CASE("mode decay bound is monotone decreasing in n") {
    for (double t : {0.0, 0.05, 0.5}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int n = n_split(kCfg) + 1; n <= n_split(kCfg) + 40; ++n) {
            const double bound = mode_decay_bound(mode_params(kCfg, n), t);
            CHECK(bound < prev);
            prev = bound;
        }
    }
}

TEST_CASE("mode decay bound rejects non-overdamped modes") {
    CHECK_THROWS_AS(mode_decay_bound(mode_params(kCfg, 5), 0.1), WrongRegime);
    CHECK_THROWS_AS(mode_decay_bound(mode_params(kCfg, 20), 0.1), WrongRegime);
}

TEST_CASE("kernel satisfies the modal ODE residual bound") {
    const double delta = std::sqrt(2.2e-16);
    for (int n : {1, 5, 20, 21, 40}) {
        const ModeParams p = mode_params(kCfg, n);
        const double om2 = kCfg.c * kCfg.c * p.gamma_n * p.gamma_n;
        for (double t : {0.05, 0.3, 0.9}) {
            const KernelValue center = kernel_h(p, t);
            const double hpp =
                (kernel_h(p, t + delta).h_prime - kernel_h(p, t - delta).h_prime) / (2.0 * delta);
            const double residual = hpp + 2.0 * p.a * center.h_prime + om2 * center.h;
            CHECK(std::abs(residual) <= 1e-7 * std::max(1.0, om2 * std::abs(center.h)));
        }
    }
}

TEST_CASE("h_prime matches central differences at second order") {
    for (int n : {2, 5, 20, 33}) {
        const ModeParams p = mode_params(kCfg, n);
        for (double t : {0.2, 0.7}) {
            const double h0 = 1e-3;
            auto fd = [&](double step) {
                return (kernel_h(p, t + step).h - kernel_h(p, t - step).h) / (2.0 * step);
            };
            const double exact = kernel_h(p, t).h_prime;
            const double e0 = std::abs(fd(h0) - exact);
            const double e1 = std::abs(fd(h0 / 2.0) - exact);
            REQUIRE(e0 > 1e-13); // above the roundoff floor, order is measurable
            CHECK(std::log2(e0 / e1) >= 1.9);
        }
    }
}

TEST_CASE("kernel is continuous across the critical band edges") {
    // scan epsilon so the discriminant crosses both band boundaries
    const int n = 10;
    const double t = 0.5;
    auto h_at = [&](double d_target) {
        const double ratio = std::sqrt(1.0 - d_target);
        StripConfig cfg = kCfg;
        cfg.epsilon = 0.2 / ratio; // makes k = 10 * ratio for c=1, l=pi
        const ModeParams p = mode_params(cfg, n);
        REQUIRE(std::abs(p.discriminant - d_target) < 1e-10);
        return kernel_h(p, t).h;
    };
    for (double edge : {-kCriticalBand, kCriticalBand}) {
        const double below = h_at(edge - 1e-12);
        const double above = h_at(edge + 1e-12);
        CHECK(std::abs(below - above) <= 1e-8 * std::max(std::abs(below), std::abs(above)));
    }
}

TEST_CASE("overflow-free overdamped evaluation at large arguments") {
    // b n^2 t s > 30 exercises the exponential-difference path
    const ModeParams p = mode_params(kCfg, 200);
    const std::vector<double> ts = time_grid(32, 1.0);
    OdeProblem ode;
    ode.damping = kCfg.epsilon * p.gamma_n * p.gamma_n;
    ode.stiffness = kCfg.c * kCfg.c * p.gamma_n * p.gamma_n;
    ode.initial_velocity = 1.0;
    const OdeTrajectory ref = integrate_mode(ode, ts);
    CHECK(trajectory_rel_error(p, ref, ts) <= 1e-8);
    for (double t : ts) {
        CHECK(std::isfinite(kernel_h(p, t).h));
        CHECK(std::isfinite(kernel_h(p, t).h_prime));
    }
}
