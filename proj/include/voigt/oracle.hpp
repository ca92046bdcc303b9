#pragma once

#include <functional>
#include <vector>

#include "voigt/model.hpp"

namespace voigt {

/// Modal reference problem  y'' + damping y' + stiffness y = forcing(t).
/// For mode n of the strip problem: damping = epsilon gamma_n^2,
/// stiffness = c^2 gamma_n^2, forcing = -f_n(t).
struct OdeProblem {
    double damping = 0.0;
    double stiffness = 0.0;
    double initial_value = 0.0;
    double initial_velocity = 0.0;
    std::function<double(double)> forcing; ///< may be null (homogeneous)
};

struct OdeTrajectory {
    std::vector<double> value;
    std::vector<double> derivative;
};

/// Adaptive Dormand-Prince 5(4) integration with output forced exactly onto
/// the (ascending, from 0) grid points. Local tolerance defaults to the
/// oracle's contract of 1e-12. Throws StiffnessFailure when the step
/// collapses below 1e-14 * horizon.
OdeTrajectory integrate_mode(const OdeProblem& p, const std::vector<double>& t_grid,
                             double rel_tol = 1e-12, double abs_tol = 1e-14);

/// Finite-difference discretization used purely for cross-validation.
/// Space: second-order central. Time: leapfrog for u_tt, the viscous
/// mixed term epsilon u_xxt taken implicitly with the time-centered
/// velocity (u^{j+1}-u^{j-1})/(2 dt), which keeps the scheme second order
/// and dissipative for every stable step size.
struct FdScheme {
    int nx = 0;
    int nt = 0;
    double cfl_limit = 0.9; ///< enforced bound on c dt / dx
};

/// Explicit-wave/implicit-viscous time stepping; Dirichlet rows pinned to
/// zero; first step by Taylor expansion with modal-exact second derivatives
/// of the sine-series data. Throws UnstableParameters when c dt / dx
/// exceeds the scheme's limit.
FieldGrid solve_fd(const Problem& problem, const FdScheme& scheme);

/// Applies the centered discrete operator
///   epsilon Dxx Dt + c^2 Dxx - Dtt
/// to a sampled field; interior points only, zeros elsewhere. This is the
/// stencil the residual identity tests use to pin sign conventions.
FieldGrid apply_operator_stencil(const StripConfig& cfg, const FieldGrid& v);

/// Discrete leapfrog energy between layers j and j+1 (f = 0 diagnostics).
double fd_discrete_energy(const FieldGrid& u, const StripConfig& cfg, int j);

} // namespace voigt
