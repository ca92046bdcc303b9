#include "voigt/modal.hpp"

#include <cmath>
#include <numbers>

#include "voigt/errors.hpp"

namespace voigt {

namespace {

/// Snap a positive real to the nearest integer when within 1e-12 relative;
/// otherwise floor. Keeps split indices stable when k is integral up to
/// roundoff (the critical-mode path must trigger robustly).
int floor_snapped(double value) {
    const double nearest = std::round(value);
    if (nearest >= 0.0 && std::abs(value - nearest) <= 1e-12 * std::abs(value)) {
        return static_cast<int>(nearest);
    }
    return static_cast<int>(std::floor(value));
}

} // namespace

ModeParams mode_params(const StripConfig& cfg, int n) {
    ModeParams p;
    p.n = n;
    p.epsilon = cfg.epsilon;
    p.c = cfg.c;
    p.q = cfg.q();
    p.b = cfg.b();
    p.gamma_n = std::numbers::pi * static_cast<double>(n) / cfg.l;
    p.k = cfg.k_threshold();
    p.ratio = p.k / static_cast<double>(n);
    p.discriminant = 1.0 - p.ratio * p.ratio;
    p.a = p.b * static_cast<double>(n) * static_cast<double>(n);
    if (p.discriminant < -kCriticalBand) {
        p.regime = Regime::Oscillatory;
    } else if (p.discriminant > kCriticalBand) {
        p.regime = Regime::Hyperbolic;
    } else {
        p.regime = Regime::Critical;
    }
    return p;
}

int n_split(const StripConfig& cfg) { return floor_snapped(cfg.k_threshold()); }

int n_alpha(const StripConfig& cfg, double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) {
        throw InvalidAlpha("alpha must satisfy 1/2 < alpha < 1");
    }
    return floor_snapped(2.0 * cfg.c * cfg.l / (std::numbers::pi * std::pow(cfg.epsilon, alpha)));
}

double beta_fraction(const StripConfig& cfg) {
    const double k = cfg.k_threshold();
    const double nearest = std::round(k);
    if (std::abs(k - nearest) <= 1e-12 * k) return 0.0;
    return k - std::floor(k);
}

namespace {

// Both kernel branches reduce to
//   H   = t e^{-at} p(w),      H' = e^{-at} (q(w) - a t p(w)),
// with w = (a t)^2 * discriminant and
//   p(w) = sinhc(sqrt(w)) = sinc(sqrt(-w)),   q(w) = cosh(sqrt(w)) = cos(sqrt(-w)).
// Near the double root both closed forms lose the radicand; degree-7 Taylor
// polynomials in w bridge the band smoothly (error < 1e-28 there).

double p_taylor(double w) {
    // sum w^m / (2m+1)!, m = 0..7
    return 1.0 +
           w * (1.0 / 6.0 +
                w * (1.0 / 120.0 +
                     w * (1.0 / 5040.0 +
                          w * (1.0 / 362880.0 +
                               w * (1.0 / 39916800.0 +
                                    w * (1.0 / 6227020800.0 + w * (1.0 / 1307674368000.0)))))));
}

double q_taylor(double w) {
    // sum w^m / (2m)!, m = 0..7
    return 1.0 +
           w * (1.0 / 2.0 +
                w * (1.0 / 24.0 +
                     w * (1.0 / 720.0 +
                          w * (1.0 / 40320.0 +
                               w * (1.0 / 3628800.0 +
                                    w * (1.0 / 479001600.0 + w * (1.0 / 87178291200.0)))))));
}

constexpr double kTaylorArg = 1e-5; // |z| below this: series instead of sin(z)/z

} // namespace

KernelValue kernel_h(const ModeParams& p, double t) {
    if (t < 0.0) throw NegativeTime();
    const double a = p.a;
    const double at = a * t;
    const double d = p.discriminant;

    if (p.regime == Regime::Critical) {
        const double w = at * at * d;
        const double e = std::exp(-at);
        return {t * e * p_taylor(w), e * (q_taylor(w) - at * p_taylor(w))};
    }

    if (p.regime == Regime::Hyperbolic) {
        const double s = std::sqrt(d);
        const double z = at * s;
        if (z <= 30.0) {
            const double pw = z < kTaylorArg ? p_taylor(z * z) : std::sinh(z) / z;
            const double qw = std::cosh(z);
            const double e = std::exp(-at);
            return {t * e * pw, e * (qw - at * pw)};
        }
        // Large argument: sinh would overflow long before the product with
        // e^{-at} does, so work with the two exponentials directly.
        // 1 - s is formed cancellation-free as (1 - d) / (1 + s).
        const double one_minus_s = (1.0 - d) / (1.0 + s);
        const double em = at * one_minus_s; // = a t (1 - s)
        const double ep = at * (1.0 + s);
        const double lo = std::exp(-em);
        const double hi = std::exp(-ep);
        const double h = (lo - hi) / (2.0 * a * s);
        const double h_prime = (hi * (1.0 + s) - lo * one_minus_s) / (2.0 * s);
        return {h, h_prime};
    }

    // Oscillatory
    const double sigma = std::sqrt(-d);
    const double z = at * sigma;
    const double pw = z < kTaylorArg ? p_taylor(-z * z) : std::sin(z) / z;
    const double qw = std::cos(z);
    const double e = std::exp(-at);
    return {t * e * pw, e * (qw - at * pw)};
}

double kernel_g1(const ModeParams& p, double t) {
    const KernelValue kv = kernel_h(p, t);
    // G1_n = H_n' + epsilon gamma_n^2 H_n, and epsilon gamma_n^2 = 2 b n^2.
    return kv.h_prime + 2.0 * p.a * kv.h;
}

double kernel_g1_prime(const ModeParams& p, double t) {
    const KernelValue kv = kernel_h(p, t);
    return -(p.c * p.gamma_n) * (p.c * p.gamma_n) * kv.h;
}

double mode_decay_bound(const ModeParams& p, double t) {
    if (p.regime != Regime::Hyperbolic) {
        throw WrongRegime("mode decay bound only applies to overdamped modes");
    }
    if (t < 0.0) throw NegativeTime();
    const double fast = p.c * p.c * t / p.epsilon;
    return std::exp(-fast) / (2.0 * p.a * std::sqrt(p.discriminant));
}

} // namespace voigt
