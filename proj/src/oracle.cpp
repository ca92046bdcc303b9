#include "voigt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "voigt/errors.hpp"
#include "voigt/summation.hpp"

namespace voigt {

namespace {

struct State {
    double y;
    double v;
};

struct Derivative {
    double dy;
    double dv;
};

Derivative rhs(const OdeProblem& p, double t, const State& s) {
    const double force = p.forcing ? p.forcing(t) : 0.0;
    return {s.v, -p.damping * s.v - p.stiffness * s.y + force};
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

} // namespace

OdeTrajectory integrate_mode(const OdeProblem& p, const std::vector<double>& t_grid,
                             double rel_tol, double abs_tol) {
    if (t_grid.empty()) return {};
    if (t_grid.front() != 0.0) throw ValidationError("oracle time grid must start at 0");
    for (size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw ValidationError("oracle time grid must ascend");
    }

    OdeTrajectory out;
    out.value.reserve(t_grid.size());
    out.derivative.reserve(t_grid.size());

    State y{p.initial_value, p.initial_velocity};
    double t = 0.0;
    out.value.push_back(y.y);
    out.derivative.push_back(y.v);

    const double horizon = t_grid.back();
    if (horizon == 0.0) return out;
    const double h_min = 1e-14 * horizon;

    // Initial step: conservative fraction of the fastest time scale.
    const double rate = std::max({p.damping, std::sqrt(std::max(p.stiffness, 0.0)), 1.0 / horizon});
    double h = std::min(0.1 / rate, horizon);

    Derivative k1 = rhs(p, t, y);
    size_t next_out = 1;

    while (next_out < t_grid.size()) {
        const double t_target = t_grid[next_out];
        bool hit_output = false;
        double h_try = h;
        if (t + h_try >= t_target) {
            h_try = t_target - t;
            hit_output = true;
        }
        if (h_try < h_min) throw StiffnessFailure();

        const State y2{y.y + h_try * a21 * k1.dy, y.v + h_try * a21 * k1.dv};
        const Derivative k2 = rhs(p, t + c2 * h_try, y2);
        const State y3{y.y + h_try * (a31 * k1.dy + a32 * k2.dy),
                       y.v + h_try * (a31 * k1.dv + a32 * k2.dv)};
        const Derivative k3 = rhs(p, t + c3 * h_try, y3);
        const State y4{y.y + h_try * (a41 * k1.dy + a42 * k2.dy + a43 * k3.dy),
                       y.v + h_try * (a41 * k1.dv + a42 * k2.dv + a43 * k3.dv)};
        const Derivative k4 = rhs(p, t + c4 * h_try, y4);
        const State y5{y.y + h_try * (a51 * k1.dy + a52 * k2.dy + a53 * k3.dy + a54 * k4.dy),
                       y.v + h_try * (a51 * k1.dv + a52 * k2.dv + a53 * k3.dv + a54 * k4.dv)};
        const Derivative k5 = rhs(p, t + c5 * h_try, y5);
        const State y6{
            y.y + h_try * (a61 * k1.dy + a62 * k2.dy + a63 * k3.dy + a64 * k4.dy + a65 * k5.dy),
            y.v + h_try * (a61 * k1.dv + a62 * k2.dv + a63 * k3.dv + a64 * k4.dv + a65 * k5.dv)};
        const Derivative k6 = rhs(p, t + h_try, y6);
        const State y7{y.y + h_try * (b1 * k1.dy + b3 * k3.dy + b4 * k4.dy + b5 * k5.dy + b6 * k6.dy),
                       y.v + h_try * (b1 * k1.dv + b3 * k3.dv + b4 * k4.dv + b5 * k5.dv + b6 * k6.dv)};
        const Derivative k7 = rhs(p, t + h_try, y7);

        const double err_y =
            h_try * (e1 * k1.dy + e3 * k3.dy + e4 * k4.dy + e5 * k5.dy + e6 * k6.dy + e7 * k7.dy);
        const double err_v =
            h_try * (e1 * k1.dv + e3 * k3.dv + e4 * k4.dv + e5 * k5.dv + e6 * k6.dv + e7 * k7.dv);
        const double scale_y = abs_tol + rel_tol * std::max(std::abs(y.y), std::abs(y7.y));
        const double scale_v = abs_tol + rel_tol * std::max(std::abs(y.v), std::abs(y7.v));
        const double err = std::sqrt(0.5 * ((err_y / scale_y) * (err_y / scale_y) +
                                            (err_v / scale_v) * (err_v / scale_v)));

        if (err <= 1.0) {
            t += h_try;
            y = y7;
            k1 = k7; // FSAL
            if (hit_output) {
                t = t_target; // suppress drift
                out.value.push_back(y.y);
                out.derivative.push_back(y.v);
                ++next_out;
            }
        }
        const double factor =
            err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h = std::max(h_try * factor, h_min);
    }
    return out;
}

namespace {

double series_second_derivative(const SineSeriesFn& fn, double l, double x, double t) {
    // Modal-exact: d^2/dx^2 sum a_n sin(gamma_n x) = -sum gamma_n^2 a_n sin(gamma_n x).
    const double factor = fn.time_factor(t);
    KahanSum sum;
    for (const auto& mode : fn.modes) {
        const double gamma = std::numbers::pi * mode.n / l;
        sum.add(-gamma * gamma * mode.a * factor * sin_mode(mode.n, x, l));
    }
    return sum.value();
}

} // namespace

FieldGrid solve_fd(const Problem& problem, const FdScheme& scheme) {
    const StripConfig& cfg = problem.cfg;
    const Grid grid = Grid::uniform(cfg, scheme.nx, scheme.nt);
    const double dx = cfg.l / (scheme.nx - 1);
    const double dt = cfg.t_max / (scheme.nt - 1);
    const double cfl = cfg.c * dt / dx;
    if (cfl > scheme.cfl_limit) {
        throw UnstableParameters("c*dt/dx = " + std::to_string(cfl) + " > " +
                                 std::to_string(scheme.cfl_limit));
    }

    FieldGrid u = FieldGrid::zeros(grid);
    const int nx = scheme.nx;
    const int nt = scheme.nt;

    for (int i = 1; i < nx - 1; ++i) {
        u.at(i, 0) = eval_sine_series(problem.f0, cfg.l, grid.x_points[i], 0.0);
    }
    if (nt > 1) {
        for (int i = 1; i < nx - 1; ++i) {
            const double x = grid.x_points[i];
            const double f0xx = series_second_derivative(problem.f0, cfg.l, x, 0.0);
            const double f1xx = series_second_derivative(problem.f1, cfg.l, x, 0.0);
            const double f00 = eval_sine_series(problem.f, cfg.l, x, 0.0);
            u.at(i, 1) = u.at(i, 0) + dt * eval_sine_series(problem.f1, cfg.l, x, 0.0) +
                         0.5 * dt * dt * (cfg.c * cfg.c * f0xx + cfg.epsilon * f1xx - f00);
        }
    }

    // Tridiagonal system for the implicit viscous term (constant coefficients).
    const int m = nx - 2;
    const double inv_dt2 = 1.0 / (dt * dt);
    const double mu = cfg.epsilon / (2.0 * dt * dx * dx);
    const double diag = inv_dt2 + 2.0 * mu;
    const double off = -mu;
    std::vector<double> cp(m), rhs_v(m), sol(m);

    const double c2dx2 = cfg.c * cfg.c / (dx * dx);
    auto dxx = [&](int i, int j) {
        return (u.at(i - 1, j) - 2.0 * u.at(i, j) + u.at(i + 1, j));
    };

    for (int j = 1; j < nt - 1; ++j) {
        const double tj = grid.t_points[j];
        for (int i = 1; i < nx - 1; ++i) {
            rhs_v[i - 1] = (2.0 * u.at(i, j) - u.at(i, j - 1)) * inv_dt2 + c2dx2 * dxx(i, j) -
                           mu * dxx(i, j - 1) -
                           eval_sine_series(problem.f, cfg.l, grid.x_points[i], tj);
        }
        // Thomas sweep
        cp[0] = off / diag;
        sol[0] = rhs_v[0] / diag;
        for (int i = 1; i < m; ++i) {
            const double denom = diag - off * cp[i - 1];
            cp[i] = off / denom;
            sol[i] = (rhs_v[i] - off * sol[i - 1]) / denom;
        }
        for (int i = m - 2; i >= 0; --i) sol[i] -= cp[i] * sol[i + 1];
        for (int i = 1; i < nx - 1; ++i) u.at(i, j + 1) = sol[i - 1];
    }
    return u;
}

FieldGrid apply_operator_stencil(const StripConfig& cfg, const FieldGrid& v) {
    const Grid& grid = v.grid;
    FieldGrid out = FieldGrid::zeros(grid);
    const double dx = grid.x_points[1] - grid.x_points[0];
    const double dt = grid.t_points[1] - grid.t_points[0];
    for (int j = 1; j < grid.nt - 1; ++j) {
        for (int i = 1; i < grid.nx - 1; ++i) {
            auto dxx = [&](int jj) {
                return (v.at(i - 1, jj) - 2.0 * v.at(i, jj) + v.at(i + 1, jj)) / (dx * dx);
            };
            const double mixed = cfg.epsilon * (dxx(j + 1) - dxx(j - 1)) / (2.0 * dt);
            const double wave = cfg.c * cfg.c * dxx(j);
            const double dtt = (v.at(i, j + 1) - 2.0 * v.at(i, j) + v.at(i, j - 1)) / (dt * dt);
            out.at(i, j) = mixed + wave - dtt;
        }
    }
    return out;
}

double fd_discrete_energy(const FieldGrid& u, const StripConfig& cfg, int j) {
    const Grid& grid = u.grid;
    const double dx = grid.x_points[1] - grid.x_points[0];
    const double dt = grid.t_points[1] - grid.t_points[0];
    KahanSum kinetic, potential;
    for (int i = 0; i < grid.nx; ++i) {
        const double vel = (u.at(i, j + 1) - u.at(i, j)) / dt;
        kinetic.add(vel * vel * dx);
    }
    for (int i = 0; i < grid.nx - 1; ++i) {
        const double g_new = (u.at(i + 1, j + 1) - u.at(i, j + 1)) / dx;
        const double g_old = (u.at(i + 1, j) - u.at(i, j)) / dx;
        potential.add(g_new * g_old * dx);
    }
    return 0.5 * kinetic.value() + 0.5 * cfg.c * cfg.c * potential.value();
}

} // namespace voigt
