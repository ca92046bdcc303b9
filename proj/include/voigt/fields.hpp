#pragma once

#include <vector>

#include "voigt/modal.hpp"
#include "voigt/model.hpp"

namespace voigt {

/// Coefficient trajectories of one sine mode on the shared time grid.
/// Later stages append to the same track: w/lambda from the reduced
/// problem, the source F, r from the modal convolution,
/// u from the direct variation-of-constants solution.
struct ModeTrack {
    int n = 0;
    std::vector<double> w, w_t;
    std::vector<double> lambda, lambda_t;
    std::vector<double> forcing;  ///< f_n(t_j)
    std::vector<double> source_f; ///< F_n(t_j)
    std::vector<double> r;
    std::vector<double> u, u_t;
};

struct QuadratureInfo {
    double estimate = 0.0;  ///< worst Richardson estimate across all stages
    double threshold = 0.0; ///< 1e-9 * (1 + sup |integrand|)
};

struct ModalState {
    StripConfig cfg;
    std::vector<double> t_points;
    std::vector<ModeTrack> tracks;
    QuadratureInfo quad;
};

/// Stage-by-stage modal solver. All time convolutions use composite
/// 8-node Gauss-Legendre per grid step (split at table knots), with one
/// global Richardson refinement at halved steps; the refined values are
/// kept and the difference feeds the error estimate. Raises
/// QuadratureFailure when the estimate exceeds 1e-9 * (1 + sup|integrand|).
class ModalPipeline {
public:
    ModalPipeline(Problem problem, std::vector<double> t_points);

    const ModalState& solve_reduced();   ///< w, w_t
    const ModalState& build_lambda();    ///< lambda = (2 - gamma^2) w, exact lambda_t
    const ModalState& build_source();    ///< forcing and F
    /// r_n = eps f0_n H_n - int F_n(tau) H_n(t - tau) dtau: the exact
    /// difference u - e^{-eps t} w. The homogeneous term compensates the
    /// initial velocity shed by e^{-eps t} at t = 0 and vanishes for
    /// f0 = 0 data (the zero-IC remainder of the estimate chain).
    const ModalState& solve_remainder();
    const ModalState& solve_full();      ///< u_n = f0 G1 + f1 H - int H f_n
    const ModalState& solve_all();

    const ModalState& state() const { return state_; }
    const Problem& problem() const { return problem_; }

    // Point evaluators away from the grid (closed forms + prefix integrals).
    double eval_w(size_t mode_pos, double t) const;
    double eval_w_t(size_t mode_pos, double t) const;
    double eval_source(size_t mode_pos, double t) const;

private:
    struct PerMode {
        ModeParams params;
        double omega = 0.0; ///< c gamma_n
        double f0 = 0.0, f1 = 0.0, fa = 0.0;
        // prefix integrals of cos/sin(omega tau) * f_n(tau) at grid points
        std::vector<double> ic, is;
        std::vector<double> ic_coarse, is_coarse;
        // cached quadrature nodes of the whole time axis, fine and coarse
        std::vector<double> tau_f, wgt_f, fval_f, srcval_f;
        std::vector<double> tau_c, wgt_c, fval_c, srcval_c;
        std::vector<size_t> seg_end_f, seg_end_c; ///< node count through interval j
    };

    double forcing_at(const PerMode& m, double t) const;
    void prefix_to(const PerMode& m, double t, double& ic, double& is) const;
    void note_integrand(double v);

    Problem problem_;
    ModalState state_;
    std::vector<PerMode> modes_;
    double sup_integrand_ = 0.0;
    bool reduced_done_ = false, lambda_done_ = false, source_done_ = false;
    bool remainder_done_ = false, full_done_ = false;
};

/// One-call convenience: everything computed.
ModalState solve_modal(const Problem& problem, const std::vector<double>& t_points);

/// Free-function wrappers over the pipeline stages.
ModalState solve_reduced(const Problem& problem, const std::vector<double>& t_points);
void build_lambda(ModalState& state);

enum class FieldKind { W, WT, Lambda, LambdaT, Forcing, SourceF, R, U, UT, Decomposition };

/// Synthesizes a modal track on a space-time lattice:
///   values[i][j] = sum_n track_n(t_j) sin(gamma_n x_i),
/// compensated and in ascending mode order. FieldKind::Decomposition
/// assembles e^{-eps t} w + r. Grid times must match the state's.
FieldGrid assemble_field(const ModalState& state, FieldKind kind, const Grid& grid);

} // namespace voigt
