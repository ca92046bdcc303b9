#pragma once

#include "voigt/model.hpp"

namespace voigt {

enum class Regime { Oscillatory, Critical, Hyperbolic };

/// Half-width of the discriminant band treated as a degenerate double root.
/// Inside the band both closed-form branches lose precision; the kernel
/// switches to a Taylor polynomial that is accurate through the band.
inline constexpr double kCriticalBand = 1e-6;

/// Per-mode spectral quantities derived from a StripConfig, the
/// building blocks for everything downstream:
///   gamma_n = pi n / l,  b = q epsilon,  a = b n^2 (modal decay rate),
///   discriminant = 1 - (k/n)^2 (sign selects the kernel branch).
struct ModeParams {
    int n = 0;
    double epsilon = 0.0;
    double c = 0.0;
    double gamma_n = 0.0;
    double b = 0.0;
    double q = 0.0;
    double k = 0.0;
    double ratio = 0.0;        ///< k / n
    double discriminant = 0.0; ///< 1 - ratio^2
    double a = 0.0;            ///< b n^2
    Regime regime = Regime::Oscillatory;
};

ModeParams mode_params(const StripConfig& cfg, int n);

/// N = floor(k); snapped to the nearest integer when k is integral within
/// 1e-12 * k, so the split index is robust against roundoff in k.
int n_split(const StripConfig& cfg);

/// N_alpha = floor(2 c l / (pi epsilon^alpha)); requires 1/2 < alpha < 1.
int n_alpha(const StripConfig& cfg, double alpha);

/// beta = k - floor(k) for non-integer k, and identically 0 for integer k.
double beta_fraction(const StripConfig& cfg);

struct KernelValue {
    double h = 0.0;       ///< H_n(t)
    double h_prime = 0.0; ///< dH_n/dt
};

/// Modal impulse response: the solution of
///   T'' + epsilon gamma_n^2 T' + c^2 gamma_n^2 T = 0, T(0)=0, T'(0)=1,
/// evaluated in a branch-stable way across all three regimes.
/// Throws NegativeTime for t < 0.
KernelValue kernel_h(const ModeParams& p, double t);

/// Companion homogeneous kernel with T(0)=1, T'(0)=0; identical branch
/// logic via the identity G1_n = H_n' + epsilon gamma_n^2 H_n.
double kernel_g1(const ModeParams& p, double t);

/// d(G1_n)/dt = -c^2 gamma_n^2 H_n(t); exact, no extra branch logic.
double kernel_g1_prime(const ModeParams& p, double t);

/// Rigorous bound exp(-c^2 t / epsilon) / (2 b n^2 sqrt(discriminant))
/// on |H_n(t)| for overdamped modes; throws WrongRegime otherwise.
double mode_decay_bound(const ModeParams& p, double t);

} // namespace voigt
