#pragma once

#include <string>
#include <vector>

#include "voigt/fields.hpp"
#include "voigt/green.hpp"
#include "voigt/model.hpp"
#include "voigt/report_io.hpp"

namespace voigt {

/// Constants and exponents of the decay envelopes for |G|, |G1|, |G2|.
struct BoundEnvelope {
    double a0 = 0.0;
    double a1 = 0.0;
    double m0 = 0.0;
    double c1 = 0.0;
    double c_geom = 0.0;
    double alpha = 0.9;
    double q = 0.0;
};

/// a0 eps^-alpha e^{-q eps t} + m0 eps^-3/2 e^{-c^2 t / eps^(2 alpha - 1)}
double envelope_g(const BoundEnvelope& env, const StripConfig& cfg, double t);
/// Same shape with a1 in place of m0 (the G1 estimate).
double envelope_g1(const BoundEnvelope& env, const StripConfig& cfg, double t);
/// c1 eps^-2 e^{-c^2 t / eps} (the G2 fast-time estimate).
double envelope_g2(const BoundEnvelope& env, const StripConfig& cfg, double t);

/// Time past which the slow-time term of envelope_g dominates the fast one;
/// 0 when it dominates from the start.
double envelope_crossover_time(const BoundEnvelope& env, const StripConfig& cfg);

/// Geometric constant of the overdamped-band estimate, with the grouping
///   C = 4 pi c l (1 - beta) / (2 c l + pi (1 - beta)),   beta = 0 for integer k.
/// Reported for reference; truncation certificates use the per-mode bound.
double c_geometry(const StripConfig& cfg);
double c1_analytic(const StripConfig& cfg);

/// eta from 2 eta = min{(2 alpha - 1) gamma - 1/2, 1 - alpha}; throws
/// InvalidExponents naming the violated precondition
/// (3/4 < alpha < 1, 1/(2(2 alpha - 1)) < gamma < 1).
double eta_exponent(double alpha, double gamma_exp);

struct ErrorBoundParams {
    double alpha = 0.9;
    double gamma_exp = 0.95;
    double eta() const { return eta_exponent(alpha, gamma_exp); }
};

/// Minimal (a, m) >= 0 with a*e1_i + m*e2_i >= g_i for all samples,
/// found by exhaustive vertex enumeration over active-constraint pairs.
struct TwoTermFit {
    double a = 0.0;
    double m = 0.0;
};
TwoTermFit fit_two_term(const std::vector<double>& e1, const std::vector<double>& e2,
                        const std::vector<double>& g);

/// Envelope constants fitted per epsilon over sampled |G|, |G1|, |G2|;
/// every fitted constant includes a 5% headroom factor, and the fit is
/// re-checked on a once-refined sample lattice (refit + 4x recheck before
/// giving up with SamplingTooCoarse).
struct EnvelopeFitReport {
    double alpha = 0.9;
    std::vector<double> epsilons;
    std::vector<double> a0_g, m0_g;   ///< full-G envelope fit
    std::vector<double> a0_g1, a1_g1; ///< G1 split fit
    std::vector<double> c1_g2;        ///< G2 single-ratio fit
    std::vector<double> a0_slow;      ///< a1 = 0 fit restricted to t >= sqrt(eps)
    std::vector<double> cert_worst;   ///< worst absolute sampling certificate per eps
    double a0_max = 0.0, m0_max = 0.0, c1_max = 0.0;
    int refined_violations = 0;
    bool refit_used = false;
    int n_modes_max = 0;
};

EnvelopeFitReport fit_envelope_constants(const StripConfig& base, std::vector<double> epsilons,
                                         double alpha, const GreenSampleSpec& spec);

/// ||F|| = max{ sup|f|, sup[|lambda_t| + eps|lambda - u|] } over the grid.
struct NormF {
    double value = 0.0;
    double sup_f = 0.0;
    double sup_lambda_term = 0.0;
};
NormF norm_f(const ModalState& state, const Grid& grid);

struct SweepRecord {
    double epsilon = 0.0;
    double sup_r = 0.0;
    double norm_f = 0.0;
    double k_const = 0.0;
    double a0 = 0.0;
    double m0 = 0.0;
    double c1 = 0.0;
};

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
};

struct SweepReport {
    double alpha = 0.9;
    double gamma_exp = 0.95;
    double eta = 0.05;
    std::vector<double> epsilons;
    std::vector<SweepRecord> records;
    Regression regression;            ///< log sup|r| vs log eps
    Regression regression_normalized; ///< log (sup|r| / ||F||) vs log eps
    std::vector<std::pair<std::string, std::string>> verdicts;
    bool passed = true;
};

/// Remainder-bound side of the sweep: per-epsilon sup-r, norm-F, minimal
/// k_const over the grid (t > 0), plus regressions and verdicts.
/// "Stable within 20%" is operationalized as: no k_const exceeds 1.2x the
/// running maximum of its predecessors (the trace may fall freely).
SweepReport verify_error_bound(const Problem& base, const ErrorBoundParams& params,
                               std::vector<double> epsilons, int nx, int nt);

/// Full sweep: error-bound verification plus envelope fits; verdicts for
/// the G envelope, the G2 fast-time bound, and both remainder checks.
SweepReport run_sweep(const Problem& base, const ErrorBoundParams& params,
                      std::vector<double> epsilons, const GreenSampleSpec& gspec, int nx, int nt);

JsonValue sweep_report_json(const SweepReport& report);
std::string sweep_report_csv(const SweepReport& report);

/// Extended-horizon boundedness: recomputes r with T = 1.5 eps^-eta and
/// checks |r| <= headroom * k_ref ||F|| (eps^eta t)^2 across the grid.
struct HorizonCheck {
    double t_extended = 0.0;
    double worst_ratio = 0.0; ///< max ratio / k_ref
    bool bounded = false;
};
HorizonCheck verify_horizon(const Problem& base, const ErrorBoundParams& params, double k_ref,
                            int nx, int nt, double headroom = 1.05);

/// Mode-by-mode check of the two band inequalities (radical lower bounds
/// and exponential-rate comparisons). For integer k the n = N mode of the
/// second band is skipped and flagged.
struct BandCheckReport {
    struct Violation {
        int n = 0;
        int band = 0;
        std::string inequality;
        double lhs = 0.0;
        double rhs = 0.0;
    };
    std::vector<Violation> violations;
    bool integer_k = false;
    bool skipped_critical_mode = false;
    int n_alpha = 0;
    int n_split = 0;
};
BandCheckReport verify_band_inequalities(const StripConfig& cfg, double alpha);

} // namespace voigt
