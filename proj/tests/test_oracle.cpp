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

} // namespace

TEST_CASE("undamped oscillator reproduces sin(omega t)/omega") {
    const double omega = 3.0;
    OdeProblem p;
    p.damping = 0.0;
    p.stiffness = omega * omega;
    p.initial_velocity = 1.0;
    const std::vector<double> ts = time_grid(33, 2.0);
    const OdeTrajectory traj = integrate_mode(p, ts);
    for (size_t j = 0; j < ts.size(); ++j) {
        CHECK(traj.value[j] == doctest::Approx(std::sin(omega * ts[j]) / omega).epsilon(1e-10));
        CHECK(traj.derivative[j] == doctest::Approx(std::cos(omega * ts[j])).epsilon(1e-10));
    }
}

TEST_CASE("constant forcing -1 with zero ICs matches the closed form") {
    // y'' + omega^2 y = -1  =>  y = -(1 - cos(omega t)) / omega^2,
    // the same sign convention solve_reduced uses for f_n = 1.
    const double omega = 2.0;
    OdeProblem p;
    p.stiffness = omega * omega;
    p.forcing = [](double) { return -1.0; };
    const std::vector<double> ts = time_grid(21, 1.5);
    const OdeTrajectory traj = integrate_mode(p, ts);
    for (size_t j = 0; j < ts.size(); ++j) {
        const double expected = -(1.0 - std::cos(omega * ts[j])) / (omega * omega);
        CHECK(traj.value[j] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("oracle agrees with kernel_h in every regime class") {
    const std::vector<double> ts = time_grid(48, 1.0);
    auto check_mode = [&](const StripConfig& cfg, int n) {
        const ModeParams p = mode_params(cfg, n);
        OdeProblem ode;
        ode.damping = cfg.epsilon * p.gamma_n * p.gamma_n;
        ode.stiffness = cfg.c * cfg.c * p.gamma_n * p.gamma_n;
        ode.initial_velocity = 1.0;
        const OdeTrajectory ref = integrate_mode(ode, ts);
        double worst = 0.0, scale = 0.0;
        for (size_t j = 0; j < ts.size(); ++j) {
            worst = std::max(worst, std::abs(kernel_h(p, ts[j]).h - ref.value[j]));
            scale = std::max(scale, std::abs(ref.value[j]));
        }
        CHECK(worst / scale <= 1e-8);
    };

    check_mode(kCfg, 5);  // oscillatory
    check_mode(kCfg, 20); // critical (integer k)
    check_mode(kCfg, 50); // hyperbolic, b n^2 t up to 125

    // near-critical within ten band widths: discriminant +-5e-6
    for (double d_target : {-5e-6, 5e-6}) {
        const double ratio = std::sqrt(1.0 - d_target);
        StripConfig cfg = kCfg;
        cfg.epsilon = 0.2 / ratio; // k = 10 ratio
        const ModeParams p = mode_params(cfg, 10);
        REQUIRE(std::abs(p.discriminant - d_target) < 1e-9);
        check_mode(cfg, 10);
    }
}

TEST_CASE("oracle input validation and stiffness guard") {
    OdeProblem p;
    p.stiffness = 1.0;
    CHECK_THROWS_AS(integrate_mode(p, {0.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(integrate_mode(p, {0.0, 0.5, 0.5}), ValidationError);

    OdeProblem extreme;
    extreme.damping = 1e16;
    extreme.stiffness = 1.0;
    extreme.initial_velocity = 1.0;
    CHECK_THROWS_AS(integrate_mode(extreme, time_grid(5, 1.0)), StiffnessFailure);
}

TEST_CASE("FD solver on the zero problem is identically zero") {
    Problem p;
    p.cfg = kCfg;
    const FieldGrid u = solve_fd(p, {33, 65, 0.9});
    for (double v : u.values) CHECK(v == 0.0);
}

TEST_CASE("FD boundary columns stay pinned to zero") {
    Problem p;
    p.cfg = kCfg;
    p.f0.modes = {{1, 0.5}, {2, -0.25}};
    p.f1.modes = {{1, 0.3}};
    p.f.modes = {{2, 0.4}};
    const FieldGrid u = solve_fd(p, {41, 81, 0.9});
    for (int j = 0; j < u.grid.nt; ++j) {
        CHECK(u.at(0, j) == 0.0);
        CHECK(u.at(u.grid.nx - 1, j) == 0.0);
    }
}

TEST_CASE("FD stability bound is enforced with the violated inequality") {
    Problem p;
    p.cfg = kCfg;
    p.f0.modes = {{1, 1.0}};
    try {
        solve_fd(p, {201, 21, 0.9}); // dt far above the CFL limit
        FAIL("expected UnstableParameters");
    } catch (const UnstableParameters& e) {
        CHECK(e.inequality.find("c*dt/dx") != std::string::npos);
    }
}

TEST_CASE("FD converges at second order to the modal impulse response") {
    Problem p;
    p.cfg = kCfg;
    p.f1.modes = {{1, 1.0}}; // u(x,t) = H_1(t) sin(x)
    const ModeParams mode = mode_params(kCfg, 1);

    std::vector<double> errors;
    for (int nx : {33, 65, 129}) {
        const double dx = kCfg.l / (nx - 1);
        const int nt = static_cast<int>(std::ceil(kCfg.t_max / (0.5 * dx / kCfg.c))) + 1;
        const FieldGrid u = solve_fd(p, {nx, nt, 0.9});
        double err = 0.0;
        for (int j = 0; j < u.grid.nt; ++j) {
            const double h = kernel_h(mode, u.grid.t_points[static_cast<size_t>(j)]).h;
            for (int i = 0; i < u.grid.nx; ++i) {
                const double exact = h * std::sin(u.grid.x_points[static_cast<size_t>(i)]);
                err = std::max(err, std::abs(u.at(i, j) - exact));
            }
        }
        errors.push_back(err);
    }
    for (size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}

TEST_CASE("FD discrete energy is non-increasing without forcing") {
    Problem p;
    p.cfg = kCfg;
    p.f0.modes = {{1, 1.0}, {3, -0.4}};
    p.f1.modes = {{2, 0.6}};
    for (int nx : {33, 65}) {
        const double dx = kCfg.l / (nx - 1);
        const int nt = static_cast<int>(std::ceil(kCfg.t_max / (0.45 * dx / kCfg.c))) + 1;
        const FieldGrid u = solve_fd(p, {nx, nt, 0.9});
        double prev = fd_discrete_energy(u, kCfg, 0);
        const double e0 = prev;
        for (int j = 1; j < u.grid.nt - 1; ++j) {
            const double e = fd_discrete_energy(u, kCfg, j);
            CHECK(e <= prev + 1e-12 * e0);
            prev = e;
        }
    }
}

TEST_CASE("centered operator stencil is second-order consistent") {
    // v = sin(x) e^{-t}:  L v = (eps - c^2 - 1) sin(x) e^{-t}
    const StripConfig cfg = kCfg;
    auto stencil_error = [&](int nx, int nt) {
        const Grid grid = Grid::uniform(cfg, nx, nt);
        FieldGrid v = FieldGrid::zeros(grid);
        for (int j = 0; j < nt; ++j) {
            for (int i = 0; i < nx; ++i) {
                v.at(i, j) = std::sin(grid.x_points[static_cast<size_t>(i)]) *
                             std::exp(-grid.t_points[static_cast<size_t>(j)]);
            }
        }
        const FieldGrid lv = apply_operator_stencil(cfg, v);
        const double factor = cfg.epsilon - cfg.c * cfg.c - 1.0;
        double err = 0.0;
        for (int j = 1; j < nt - 1; ++j) {
            for (int i = 1; i < nx - 1; ++i) {
                const double exact = factor * v.at(i, j);
                err = std::max(err, std::abs(lv.at(i, j) - exact));
            }
        }
        return err;
    };
    const double e0 = stencil_error(17, 17);
    const double e1 = stencil_error(33, 33);
    CHECK(std::log2(e0 / e1) == doctest::Approx(2.0).epsilon(0.1));
}
