#include "voigt/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "voigt/errors.hpp"
#include "voigt/summation.hpp"

namespace voigt {

namespace {

void check_point(const StripConfig& cfg, double x, double xi, double t, double tol) {
    if (!(x >= 0.0 && x <= cfg.l) || !(xi >= 0.0 && xi <= cfg.l)) {
        throw OutOfDomain("green evaluation point outside the strip");
    }
    if (t < 0.0) throw NegativeTime();
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
}

double tail_discriminant(const StripConfig& cfg, int n_max) {
    const double ratio = cfg.k_threshold() / static_cast<double>(n_max + 1);
    return 1.0 - ratio * ratio;
}

} // namespace

double green_tail_bound(const StripConfig& cfg, double t, int n_max) {
    const int split = n_split(cfg);
    if (n_max < split + 1) throw ValidationError("tail bound requires n_max >= N + 1");
    const double d = tail_discriminant(cfg, n_max);
    const double fast = std::exp(-cfg.c * cfg.c * t / cfg.epsilon);
    return (2.0 / cfg.l) * fast / (2.0 * cfg.b() * std::sqrt(d) * static_cast<double>(n_max));
}

TruncationPlan plan_truncation(const StripConfig& cfg, double t, double tol) {
    const int lo_start = n_split(cfg) + 1;
    if (lo_start >= kModeCap) {
        throw TruncationFailure(tol, std::numeric_limits<double>::infinity(), kModeCap);
    }
    if (t == 0.0) return {lo_start, 0.0};

    if (green_tail_bound(cfg, t, lo_start) <= tol) {
        return {lo_start, green_tail_bound(cfg, t, lo_start)};
    }
    if (green_tail_bound(cfg, t, kModeCap) > tol) {
        throw TruncationFailure(tol, green_tail_bound(cfg, t, kModeCap), kModeCap);
    }
    // bound is monotone in n_max: bisect for the smallest admissible cut
    int lo = lo_start, hi = kModeCap;
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (green_tail_bound(cfg, t, mid) <= tol) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {hi, green_tail_bound(cfg, t, hi)};
}

double green_partial_sum(const StripConfig& cfg, double x, double xi, double t, int n_max) {
    KahanSum sum;
    for (int n = 1; n <= n_max; ++n) {
        const ModeParams p = mode_params(cfg, n);
        const double h = kernel_h(p, t).h;
        // sines grouped first so G(x, xi, t) == G(xi, x, t) bitwise
        sum.add(h * (sin_mode(n, x, cfg.l) * sin_mode(n, xi, cfg.l)));
    }
    return (2.0 / cfg.l) * sum.value();
}

GreenValue green_eval(const StripConfig& cfg, double x, double xi, double t, double tol,
                      double alpha) {
    check_point(cfg, x, xi, t, tol);
    const TruncationPlan plan = plan_truncation(cfg, t, tol);
    GreenValue out;
    out.trunc = {plan.n_max, n_alpha(cfg, alpha), n_split(cfg), plan.tail_bound, tol, alpha};
    if (t == 0.0) return out; // every H_n(0) = 0
    out.value = green_partial_sum(cfg, x, xi, t, plan.n_max);
    return out;
}

GreenSplitValue green_split(const StripConfig& cfg, double x, double xi, double t, double tol,
                            double alpha) {
    check_point(cfg, x, xi, t, tol);
    const TruncationPlan plan = plan_truncation(cfg, t, tol);
    const int split = n_split(cfg);
    GreenSplitValue out;
    out.trunc = {plan.n_max, n_alpha(cfg, alpha), split, plan.tail_bound, tol, alpha};
    if (t == 0.0) return out;
    KahanSum low, high;
    for (int n = 1; n <= plan.n_max; ++n) {
        const ModeParams p = mode_params(cfg, n);
        const double term = kernel_h(p, t).h * (sin_mode(n, x, cfg.l) * sin_mode(n, xi, cfg.l));
        (n <= split ? low : high).add(term);
    }
    out.g1 = (2.0 / cfg.l) * low.value();
    out.g2 = (2.0 / cfg.l) * high.value();
    return out;
}

GreenSubSplit green_sub_split(const StripConfig& cfg, double x, double xi, double t, double alpha) {
    check_point(cfg, x, xi, t, 1.0);
    GreenSubSplit out;
    out.n_alpha = n_alpha(cfg, alpha); // validates alpha
    out.n_split = n_split(cfg);
    KahanSum low, high;
    for (int n = 1; n <= out.n_split; ++n) {
        const ModeParams p = mode_params(cfg, n);
        const double term = kernel_h(p, t).h * (sin_mode(n, x, cfg.l) * sin_mode(n, xi, cfg.l));
        (n <= out.n_alpha ? low : high).add(term);
    }
    out.g1_low = (2.0 / cfg.l) * low.value();
    out.g1_high = (2.0 / cfg.l) * high.value();
    return out;
}

namespace {

/// Slow + fast envelope shape with unit constants; only used to scale the
/// sampler's tolerance so that fitted constants come out to ~rel_scale.
double envelope_scale(const StripConfig& cfg, double alpha, double t) {
    const double eps = cfg.epsilon;
    const double slow = std::pow(eps, -alpha) * std::exp(-cfg.q() * eps * t);
    const double fast_rate = cfg.c * cfg.c / std::pow(eps, 2.0 * alpha - 1.0);
    const double fast = std::pow(eps, -1.5) * std::exp(-fast_rate * t);
    return slow + fast;
}

int solve_mode_count(const StripConfig& cfg, double weight, int floor_mode) {
    // smallest m with m * sqrt(1 - (k/(m+1))^2) >= weight
    const double k = cfg.k_threshold();
    double m_est = std::max(static_cast<double>(floor_mode), weight);
    for (int pass = 0; pass < 4; ++pass) {
        const double ratio = k / (m_est + 1.0);
        const double d = std::max(1.0 - ratio * ratio, 1e-12);
        m_est = std::max(static_cast<double>(floor_mode), weight / std::sqrt(d));
    }
    int m = static_cast<int>(std::ceil(m_est));
    auto ok = [&](int mm) {
        const double ratio = k / (mm + 1.0);
        const double d = 1.0 - ratio * ratio;
        return d > 0.0 && mm * std::sqrt(d) >= weight;
    };
    while (m > floor_mode && ok(m - 1)) --m;
    while (m < kModeCap && !ok(m)) ++m;
    return m;
}

} // namespace

GreenSamples sample_green_maxima(const StripConfig& cfg, const GreenSampleSpec& spec) {
    if (spec.n_space < 3 || spec.n_time < 2) {
        throw ValidationError("sampler needs n_space >= 3 and n_time >= 2");
    }
    const int P = spec.n_space;
    const int M = 2 * (P - 1); // period of sin(pi n i/(P-1)) in n
    std::vector<double> table(static_cast<size_t>(M));
    for (int r = 0; r < M; ++r) {
        table[static_cast<size_t>(r)] =
            std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(P - 1));
    }

    GreenSamples out;
    out.ts.resize(static_cast<size_t>(spec.n_time));
    const double t_lo = spec.t_min_frac * cfg.t_max;
    const double ratio = std::pow(cfg.t_max / t_lo, 1.0 / (spec.n_time - 1));
    for (int j = 0; j < spec.n_time; ++j) {
        out.ts[static_cast<size_t>(j)] = t_lo * std::pow(ratio, j);
    }
    out.ts.back() = cfg.t_max;

    const int split = n_split(cfg);
    const double scale = 2.0 / cfg.l;
    out.g_max.assign(out.ts.size(), 0.0);
    out.g1_max.assign(out.ts.size(), 0.0);
    out.g2_max.assign(out.ts.size(), 0.0);
    out.cert.assign(out.ts.size(), 0.0);

    std::vector<KahanSum> bucket1(static_cast<size_t>(M));
    std::vector<KahanSum> bucket2(static_cast<size_t>(M));

    for (size_t jt = 0; jt < out.ts.size(); ++jt) {
        const double t = out.ts[jt];

        // target tail: at most rel_scale of the envelope magnitude, and at
        // least the fixed ratio-unit resolution from tail_weight
        const double K = (2.0 / cfg.l) * std::exp(-cfg.c * cfg.c * t / cfg.epsilon) /
                         (2.0 * cfg.b());
        const double tol_abs = spec.rel_scale * envelope_scale(cfg, spec.alpha, t);
        const double weight_env = K / tol_abs;
        const double weight = std::max(spec.tail_weight, weight_env);
        const int m2 = solve_mode_count(cfg, weight, split + 1);
        out.cert[jt] = green_tail_bound(cfg, t, m2);
        out.n_modes_max = std::max(out.n_modes_max, m2);

        for (auto& b : bucket1) b.reset();
        for (auto& b : bucket2) b.reset();
        for (int n = 1; n <= m2; ++n) {
            const ModeParams p = mode_params(cfg, n);
            const double h = kernel_h(p, t).h;
            (n <= split ? bucket1 : bucket2)[static_cast<size_t>(n % M)].add(h);
        }

        double gm = 0.0, g1m = 0.0, g2m = 0.0;
        for (int i = 0; i < P; ++i) {
            for (int pcol = i; pcol < P; ++pcol) {
                KahanSum s1, s2;
                for (int r = 0; r < M; ++r) {
                    const double w =
                        table[static_cast<size_t>((r * i) % M)] * table[static_cast<size_t>((r * pcol) % M)];
                    s1.add(bucket1[static_cast<size_t>(r)].value() * w);
                    s2.add(bucket2[static_cast<size_t>(r)].value() * w);
                }
                const double g1 = scale * s1.value();
                const double g2 = scale * s2.value();
                g1m = std::max(g1m, std::abs(g1));
                g2m = std::max(g2m, std::abs(g2));
                gm = std::max(gm, std::abs(g1 + g2));
            }
        }
        out.g_max[jt] = gm;
        out.g1_max[jt] = g1m;
        out.g2_max[jt] = g2m;
    }
    return out;
}

} // namespace voigt
