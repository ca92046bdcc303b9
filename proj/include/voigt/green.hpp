#pragma once

#include <vector>

#include "voigt/modal.hpp"
#include "voigt/model.hpp"

namespace voigt {

/// Certificate attached to every truncated Green's function value.
struct SeriesTruncation {
    int n_max = 0;           ///< highest retained mode
    int n_alpha = 0;         ///< N_alpha = floor(2cl / (pi eps^alpha))
    int n_split = 0;         ///< N = floor(k)
    double tail_bound = 0.0; ///< rigorous bound on the discarded tail
    double tol = 0.0;        ///< requested absolute tolerance
    double alpha = 0.0;
};

struct GreenValue {
    double value = 0.0;
    SeriesTruncation trunc;
};

struct GreenSplitValue {
    double g1 = 0.0; ///< circular part, modes 1..N (critical mode included)
    double g2 = 0.0; ///< hyperbolic part, modes N+1..n_max
    SeriesTruncation trunc;
};

/// Modes are capped here; a certificate that cannot meet its tolerance by
/// this point raises TruncationFailure carrying the achieved bound.
inline constexpr int kModeCap = 1'000'000;

/// Rigorous bound on the discarded tail past mode n_max at time t:
///   (2/l) e^{-c^2 t/eps} / (2 b sqrt(1-(k/(n_max+1))^2)) * (1/n_max),
/// i.e. the per-mode overdamped bound summed with sum_{n>m} 1/n^2 <= 1/m.
/// Requires n_max >= n_split + 1. Monotone non-increasing in n_max.
double green_tail_bound(const StripConfig& cfg, double t, int n_max);

struct TruncationPlan {
    int n_max = 0;
    double tail_bound = 0.0;
};

/// Smallest n_max >= N+1 whose tail certificate meets tol (binary search on
/// the monotone bound); throws TruncationFailure past the mode cap. t = 0
/// needs no terms at all: every H_n(0) vanishes.
TruncationPlan plan_truncation(const StripConfig& cfg, double t, double tol);

/// Fixed-truncation partial sum (2/l) sum_{n<=n_max} H_n(t) sin sin;
/// reference path for certificate self-consistency checks.
double green_partial_sum(const StripConfig& cfg, double x, double xi, double t, int n_max);

/// G(x, xi, t) with certified absolute tolerance.
GreenValue green_eval(const StripConfig& cfg, double x, double xi, double t, double tol = 1e-10,
                      double alpha = 0.9);

/// The N-split of the same sum: g1 collects the oscillatory/critical modes,
/// g2 the overdamped remainder with tail control.
GreenSplitValue green_split(const StripConfig& cfg, double x, double xi, double t,
                            double tol = 1e-10, double alpha = 0.9);

struct GreenSubSplit {
    double g1_low = 0.0;  ///< modes 1..N_alpha
    double g1_high = 0.0; ///< modes N_alpha+1..N
    int n_alpha = 0;
    int n_split = 0;
};

/// Finite partial sums of G1 around the N_alpha band boundary.
GreenSubSplit green_sub_split(const StripConfig& cfg, double x, double xi, double t, double alpha);

/// Sampling plan for envelope verification: a uniform space lattice crossed
/// with log-spaced times. The sample tolerance is scaled to the envelope
/// magnitude at each time, which keeps mode counts bounded while the fitted
/// constants stay accurate to ~rel_scale.
struct GreenSampleSpec {
    int n_space = 17;         ///< x and xi samples over [0, l], endpoints included
    int n_time = 64;          ///< log-spaced times in [t_min_frac*T, T]
    double t_min_frac = 1e-3;
    double alpha = 0.9;       ///< envelope exponent used in tolerance scaling
    double rel_scale = 1e-4;  ///< tolerance = rel_scale * envelope scale
    double tail_weight = 2e4; ///< lower bound on n_max*sqrt(disc); fixes the
                              ///< G2 resolution in ratio units
};

struct GreenSamples {
    std::vector<double> ts;
    std::vector<double> g_max;  ///< per-t max |G| over the space lattice
    std::vector<double> g1_max;
    std::vector<double> g2_max;
    std::vector<double> cert;   ///< per-t absolute tail certificate
    int n_modes_max = 0;        ///< largest truncation used
};

/// Per-time maxima of |G|, |G1|, |G2| over the lattice. Sine factors on the
/// rational lattice i*l/(P-1) repeat with period 2(P-1) in the mode index,
/// so modes are folded into 2(P-1) compensated bucket sums before the
/// spatial combination; ordering is fixed and runs are byte-reproducible.
GreenSamples sample_green_maxima(const StripConfig& cfg, const GreenSampleSpec& spec);

} // namespace voigt
