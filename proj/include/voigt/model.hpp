#pragma once

#include <optional>
#include <string>
#include <vector>

namespace voigt {

/// Physical/problem parameters of the strip problem on
/// D = [0,l] x (0,T] with homogeneous Dirichlet ends.
struct StripConfig {
    double epsilon = 0.0; ///< viscosity parameter, > 0
    double c = 0.0;       ///< wave speed, > 0
    double l = 0.0;       ///< strip width, > 0
    double t_max = 0.0;   ///< time horizon, > 0

    /// q = pi^2 / (2 l^2), so that the modal damping coefficient is b = q*epsilon.
    double q() const;
    double b() const;
    /// Regime threshold k = 2 c l / (pi epsilon); modes below k oscillate,
    /// modes above are overdamped.
    double k_threshold() const;
};

/// One shared scalar time factor applied to every mode coefficient of a
/// sine series. Tables are interpolated linearly and clamped outside
/// their knot range.
struct TimeDependence {
    enum class Kind { Constant, ExpDecay, Cosine, Table };

    Kind kind = Kind::Constant;
    double rate = 0.0;      ///< ExpDecay: exp(-rate * t)
    double frequency = 0.0; ///< Cosine: cos(frequency * t)
    std::vector<double> knots;
    std::vector<double> values;

    double operator()(double t) const;

    static TimeDependence constant();
    static TimeDependence exp_decay(double rate);
    static TimeDependence cosine(double frequency);
    static TimeDependence table(std::vector<double> knots, std::vector<double> values);
};

/// Finite sine series sum_n a_n(t) sin(n pi x / l). Mode indices must be
/// strictly increasing and >= 1; a_n(t) = a_n * time(t) when a time
/// dependence is present.
struct SineSeriesFn {
    struct Mode {
        int n = 0;
        double a = 0.0;
    };

    std::vector<Mode> modes;
    std::optional<TimeDependence> time;

    bool empty() const { return modes.empty(); }
    int max_mode() const;
    double time_factor(double t) const;
};

/// sin(n pi x / l), exactly zero at both ends of the strip.
double sin_mode(int n, double x, double l);

/// Evaluates a sine series at (x, t); ascending-mode compensated summation.
/// Throws OutOfDomain unless 0 <= x <= l.
double eval_sine_series(const SineSeriesFn& fn, double l, double x, double t);

/// Uniform sampling lattice over [0,l] x [0,T]; both endpoints are exact.
struct Grid {
    int nx = 0;
    int nt = 0;
    double l = 0.0;
    double t_max = 0.0;
    std::vector<double> x_points;
    std::vector<double> t_points;

    static Grid uniform(const StripConfig& cfg, int nx, int nt);
};

/// Scalar field sampled on a Grid. Storage is row-major by time
/// (one row per t sample), matching the CSV dump order.
struct FieldGrid {
    Grid grid;
    std::vector<double> values;

    double at(int ix, int it) const { return values[static_cast<size_t>(it) * grid.nx + ix]; }
    double& at(int ix, int it) { return values[static_cast<size_t>(it) * grid.nx + ix]; }

    static FieldGrid zeros(const Grid& grid);
};

/// A full problem instance: configuration plus the data triple
/// (forcing f, initial value f0, initial velocity f1) in sine-series form.
struct Problem {
    StripConfig cfg;
    SineSeriesFn f0;
    SineSeriesFn f1;
    SineSeriesFn f;

    /// Ascending union of the mode indices present in f0, f1, f.
    std::vector<int> active_modes() const;
};

enum class IssueCode {
    NonPositiveParameter,
    BoundaryViolation,
    EmptyData,
};

struct ValidationIssue {
    IssueCode code;
    std::string field;
    std::string message;
};

/// Result of validate_config. `k` and the integer-k flag are reported even
/// when issues are present (when computable).
struct Validation {
    std::vector<ValidationIssue> issues;
    double k = 0.0;
    bool k_is_integer = false;
    int n_split = 0;

    bool ok() const { return issues.empty(); }
};

/// Checks all StripConfig and sine-series invariants and reports
/// k = 2cl/(pi epsilon) together with an integer-k flag
/// (tolerance 1e-12 * k). Idempotent; never throws.
Validation validate_config(const Problem& problem);

/// Strict parser for the problem-file schema
///   {epsilon, c, l, t_max, f0, f1, f:{modes, time:{kind,...}}}.
/// Unknown fields are rejected. Throws ValidationError.
Problem parse_problem(const std::string& json_text);
Problem load_problem(const std::string& path);

/// Canonical echo of a problem (sorted keys, 17 significant digits);
/// used for manifests and config hashing.
std::string problem_to_json(const Problem& problem);

class JsonValue;
JsonValue problem_json_value(const Problem& problem);

} // namespace voigt
