#include "ustat/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace ustat {

namespace {

double clamp_prob(double factor, double rate) {
    return std::min(1.0, factor * std::exp(-rate));
}

BoundResult made(Regime regime, double rate, double factor) {
    BoundResult r;
    r.regime = regime;
    r.rate = std::max(0.0, rate);
    r.prob_bound = clamp_prob(factor, r.rate);
    r.preconditions_met = true;
    return r;
}

BoundResult not_applicable(std::string reason) {
    BoundResult r;
    r.regime = Regime::not_applicable;
    r.preconditions_met = false;
    r.prob_bound = 1.0;
    r.reason = std::move(reason);
    return r;
}

double tail_factor(Tail tail) { return tail == Tail::two_sided ? 2.0 : 1.0; }

}  // namespace

RateConstants main_constants(const UStatModel& model) {
    model.validate();
    if (!model.f1_norm_sq)
        throw std::invalid_argument("main_constants: f1_norm_sq is required (may be 0)");
    const A1Params p = model.a1();
    const int m = model.m;
    const double f1sq = *model.f1_norm_sq;
    const double b0m = p.beta0 * m;
    RateConstants c;
    c.c26 = f1sq / (std::pow(2.0, 17 * m + 4) * std::pow(b0m, 2 * m + 3) * std::pow(p.beta2, 4) *
                    std::pow(p.beta1, 4 * m - 2));
    c.c23 = 1.0 / (std::pow(2.0, 16 * m + 4) * std::pow(b0m, 2 * m + 1) * p.beta2 * p.beta2 *
                   std::pow(p.beta1, 2 * m - 1));
    c.c24 = std::pow(2.0, 8 * m + 1.5) * std::pow(b0m, m + 0.5) * p.beta2 *
            std::pow(p.beta1, m - 0.5);
    c.c11 = 8.0 * m * p.beta0 / p.beta1;
    c.c9 = 1.0 / p.beta1;
    c.c15 = 1.0 / (std::pow(2.0, 1.0 + p.q) * std::exp(1.0) * m *
                   std::pow(std::exp(1.0) * p.beta2, 1.0 / m));
    c.c16 = std::pow(2.0, -double(m) * p.q) * std::exp(-double(m) - 1.0) / p.beta2 /
            std::pow(p.beta1, m);
    c.c17 = std::pow(2.0, 8 * m) * p.beta2 * std::pow(b0m * p.beta1, m);
    c.c27 = std::pow(2.0, -17 * m - 4) * std::pow(b0m, -2 * m - 3) *
            std::min(1.0, f1sq / (p.beta2 * p.beta2) * std::pow(p.beta1, 1 - 2 * m));
    return c;
}

BoundResult main_bound(const UStatModel& model, double gamma, double t, Tail tail) {
    if (t < 0.0) throw std::invalid_argument("main_bound: t must be >= 0");
    const RateConstants c = main_constants(model);
    const int m = model.m;
    const A1Params p = model.a1();
    const double t_ab = c.c24 * std::pow(gamma, m - 0.5);  // (a)/(b) switch
    const double t_bc = c.c17 * std::pow(gamma, m);        // (b)/(c) switch

    if (t >= t_bc) {
        if (gamma < c.c9)
            return not_applicable("main_bound: regime (c) needs gamma >= C_9");
        // c16*c17 >= 2^{8m-mq} e^{-m-1} (m beta0)^m > 1, so the log is positive here
        const double lg = std::max(0.0, std::log(c.c16 * t / std::pow(gamma, m)));
        const double rate = c.c15 * std::pow(t, 1.0 / m) * std::pow(lg, 1.0 - p.q);
        return made(Regime::poisson_log_c, rate, 1.0);
    }
    if (gamma < c.c11)
        return not_applicable("main_bound: regimes (a)/(b) need gamma >= C_11");
    if (t < t_ab) {
        if (*model.f1_norm_sq == 0.0)
            return not_applicable("main_bound: regime (a) is trivial when ||f_1|| = 0");
        const double rate = c.c26 * t * t / std::pow(gamma, 2 * m - 1);
        return made(Regime::sub_variance_a, rate, tail_factor(tail));
    }
    const double rate = c.c23 * t * t / std::pow(gamma, 2 * m - 1);
    return made(Regime::gaussian_b, rate, 1.0);
}

BoundResult unified_bound(const UStatModel& model, double gamma, double t, Tail tail) {
    if (t < 0.0) throw std::invalid_argument("unified_bound: t must be >= 0");
    const RateConstants c = main_constants(model);
    const A1Params p = model.a1();
    const int m = model.m;
    if (p.beta1 * gamma < 8.0 * m * p.beta0)
        return not_applicable("unified_bound: needs beta1*gamma >= 8*m*beta0");
    if (c.c27 == 0.0)
        return not_applicable("unified_bound: trivial when ||f_1|| = 0");
    const double u = t / (p.beta2 * std::pow(p.beta1 * gamma, m));
    const double poly = std::pow(u, 2.0 - 1.0 / m);
    const double logpart = std::pow(1.0 + std::max(0.0, std::log(u)), 1.0 - p.q);
    const double rate = c.c27 * std::pow(t / p.beta2, 1.0 / m) * std::min(poly, logpart);
    return made(Regime::unified_d, rate, tail_factor(tail));
}

std::optional<double> poisson_tail_upper(double alpha, double y) {
    if (alpha <= 0.0) throw std::invalid_argument("poisson_tail_upper: alpha must be > 0");
    if (y < alpha + 1.0) return std::nullopt;
    return std::exp(y * (1.0 + std::log(alpha) - std::log(y)));
}

double c19_constant(double y_min) {
    if (y_min <= 0.0) throw std::invalid_argument("c19_constant: y_min must be > 0");
    // log of the Robbins upper bound for n!
    auto log_robbins = [](double n) {
        return 0.5 * std::log(2.0 * M_PI) + (n + 0.5) * std::log(n) - n + 1.0;
    };
    // within a segment y in (n-1, n] the candidate (n!)^{1/y}/y is decreasing
    // in y, so the supremum over [y_min, inf) is attained at y_min or at a
    // segment left endpoint; the candidates decay to 1/e for large n.
    auto candidate = [&](double n, double y) { return std::exp(log_robbins(n) / y - std::log(y)); };
    double best = candidate(std::ceil(y_min), y_min);
    const long long n0 = static_cast<long long>(std::ceil(y_min)) + 1;
    const long long n_cap = std::max<long long>(100000, n0 + 1000);
    for (long long n = n0; n <= n_cap; ++n) {
        const double y_left = double(n) - 1.0;
        best = std::max(best, candidate(double(n), y_left));
    }
    return best;
}

std::optional<PoissonTailLower> poisson_tail_lower(double alpha, double y, double C1, double C2) {
    if (C1 <= 0.0 || C2 <= 0.0)
        throw std::invalid_argument("poisson_tail_lower: C1, C2 must be > 0");
    if (!(alpha > C1) || !(y >= C2 * alpha)) return std::nullopt;
    PoissonTailLower out;
    out.c19 = c19_constant(C1 * C2);
    out.c14 = std::min(1.0, C1) / (std::exp(1.0 / C2) * out.c19);
    out.value = std::exp(y * std::log(out.c14 * alpha / y));
    return out;
}

BoundResult largeorder_upper(const A2Params& p, int m, double gamma, double t, bool centred) {
    p.validate();
    if (m < 1) throw std::invalid_argument("largeorder_upper: m must be >= 1");
    const double scale = centred ? 2.0 : 1.0;
    const double threshold = scale * p.alpha2 * std::pow(p.alpha1 * gamma, m);
    if (t < threshold)
        return not_applicable("largeorder_upper: needs t >= " + std::to_string(threshold));
    const double rate =
        1.0 / m * std::pow(t / (scale * p.alpha2), 1.0 / m) *
        std::log(t / (scale * std::exp(double(m)) * p.alpha2 * std::pow(p.alpha1 * gamma, m)));
    return made(Regime::poisson_log_c, rate, centred ? 2.0 : 1.0);
}

std::optional<LargeOrderLower> largeorder_lower(const A4Params& p, double f_L1, int m,
                                                double gamma, double t) {
    p.validate();
    if (m < 1) throw std::invalid_argument("largeorder_lower: m must be >= 1");
    if (f_L1 <= 0.0) throw std::invalid_argument("largeorder_lower: ||f||_L1 must be > 0");
    if (gamma <= 1.0) return std::nullopt;

    LargeOrderLower out;
    out.c1905c = 2.0 * std::pow(p.theta2, -1.0 / m);
    // constants of the non-centred lower branch with C3 = 1, C4 = ||f||_L1
    const double C1 = p.theta1;
    const double C2 = std::pow(f_L1 / p.theta2, 1.0 / m) / p.theta1;
    const double c19 = c19_constant(C1 * C2);
    out.c14 = std::min(1.0, C1) / (std::exp(1.0 / C2) * c19);
    out.c18 = 1.0 / (std::pow(out.c14, m) * p.theta2 * std::pow(p.theta1, m));

    const double mean = std::pow(gamma, m) * f_L1;
    const double gm = std::pow(gamma, m);
    // (t+EF)^{1/m} log(c18 (t+EF)/γ^m) <= 2 t^{1/m} log(t/γ^m) on the grid
    auto holds_on_grid = [&](double C) {
        if (C < f_L1) return false;
        const double lo = std::log(C * gm), hi = std::log(1e6 * gm);
        const int points = 256;
        for (int i = 0; i <= points; ++i) {
            const double tt = std::exp(lo + (hi - lo) * i / points);
            const double lhs =
                std::pow(tt + mean, 1.0 / m) * std::log(out.c18 * (tt + mean) / gm);
            const double rhs = 2.0 * std::pow(tt, 1.0 / m) * std::log(tt / gm);
            if (!(rhs > 0.0) || lhs > rhs) return false;
        }
        return true;
    };
    double lo = std::max(f_L1, 1.0), hi = lo;
    while (!holds_on_grid(hi)) {
        hi *= 2.0;
        if (hi > 1e12) return std::nullopt;  // no certifiable threshold
    }
    for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds_on_grid(mid) ? hi : lo) = mid;
    }
    out.c1905d = hi;
    out.grid_certified = true;
    if (t < out.c1905d * gm) return std::nullopt;
    out.log_value = -out.c1905c * std::pow(t, 1.0 / m) * std::log(t / gm);
    out.value = std::exp(out.log_value);
    return out;
}

BoundResult lower_tail_bp(const UStatModel& model, double gamma, double t, double c47,
                          std::optional<double> m_squared_V) {
    if (t < 0.0) throw std::invalid_argument("lower_tail_bp: t must be >= 0");
    model.validate();
    const A1Params p = model.a1();
    const int m = model.m;
    if (!model.kernel_nonneg)
        return not_applicable("lower_tail_bp: requires a non-negative kernel");
    if (c47 <= 0.0) c47 = 8.0 * m * p.beta0;
    if (gamma * p.beta1 < c47)
        return not_applicable("lower_tail_bp: needs gamma*beta1 >= c47");
    if (m_squared_V) {
        const double rate = t * t / (2.0 * *m_squared_V);
        return made(Regime::sub_variance_a, rate, 1.0);
    }
    const double c181 = std::pow(2.0, p.q + 1.0) * double(m) * double(m) *
                        std::pow(std::pow(2.0, p.q) * m / c47 + 1.0, m - 1);
    const double rate =
        t * t / (c181 * p.beta0 * p.beta2 * p.beta2 * std::pow(gamma * p.beta1, 2 * m - 1));
    return made(Regime::sub_variance_a, rate, 1.0);
}

WuBounds wu_order1(const A2Params& p, double gamma, double t, bool kernel_nonneg) {
    p.validate();
    if (t < 0.0) throw std::invalid_argument("wu_order1: t must be >= 0");
    WuBounds out;
    const double upper_rate = t / (2.0 * p.alpha2) * std::log1p(t / (gamma * p.alpha1 * p.alpha2));
    out.upper_tail = clamp_prob(1.0, upper_rate);
    if (kernel_nonneg) {
        const double lower_rate = t * t / (2.0 * gamma * p.alpha2 * p.alpha2 * p.alpha1);
        out.lower_tail = clamp_prob(1.0, lower_rate);
    }
    return out;
}

double chebyshev_cantelli(double variance, double t, double c43) {
    if (variance <= 0.0) throw std::invalid_argument("chebyshev_cantelli: variance must be > 0");
    if (c43 <= 0.0) throw std::invalid_argument("chebyshev_cantelli: c43 must be > 0");
    if (t < 0.0 || t >= c43 * std::sqrt(variance))
        throw std::domain_error("chebyshev_cantelli: needs 0 <= t < c43*sqrt(V)");
    return std::exp(-t * t / ((1.0 + c43 * c43) * variance));
}

BoundResult chebyshev_cantelli_a1(const UStatModel& model, double gamma, double t, double c43,
                                  double c47) {
    model.validate();
    const A1Params p = model.a1();
    const int m = model.m;
    if (c43 <= 0.0 || c47 <= 0.0)
        throw std::invalid_argument("chebyshev_cantelli_a1: constants must be > 0");
    if (gamma * p.beta1 < c47)
        return not_applicable("chebyshev_cantelli_a1: needs gamma*beta1 >= c47");
    if (!model.variance || *model.variance <= 0.0)
        return not_applicable("chebyshev_cantelli_a1: needs a positive variance");
    if (t >= c43 * std::sqrt(*model.variance))
        return not_applicable("chebyshev_cantelli_a1: t out of range");
    const double c44 = std::pow(2.0, p.q) * p.beta0 * double(m) * double(m) *
                       std::pow(std::pow(2.0, p.q) * m / c47 + 1.0, m - 1) * (1.0 + c43 * c43);
    const double rate = t * t / (c44 * p.beta2 * p.beta2 * std::pow(p.beta1 * gamma, 2 * m - 1));
    return made(Regime::gaussian_b, rate, 1.0);
}

CltConstants clt_constants(const UStatModel& model) {
    model.validate();
    if (!model.f1_norm_sq || *model.f1_norm_sq <= 0.0)
        throw std::invalid_argument("clt_constants: needs f1_norm_sq > 0");
    const A1Params p = model.a1();
    const int m = model.m;
    const double f1sq = *model.f1_norm_sq;
    CltConstants c;
    c.c10 = f1sq * f1sq / (std::pow(2.0, 3 * m + 7 + p.q) * std::pow(p.beta0 * m, 2) * m *
                           std::pow(p.beta2, 4) * std::pow(p.beta1, 4 * m - 2));
    c.c11 = std::pow(2.0, (m + 5 - p.q) / 2.0) / std::sqrt(p.beta0) / m;
    return c;
}

BoundResult clt_regime(const UStatModel& model, double gamma, double s) {
    if (s < 0.0) throw std::invalid_argument("clt_regime: s must be >= 0");
    model.validate();
    const A1Params p = model.a1();
    const int m = model.m;
    if (!model.f1_norm_sq || *model.f1_norm_sq <= 0.0)
        return not_applicable("clt_regime: needs f1_norm_sq > 0");
    const double c162 = std::max(1.0, std::ceil(std::log(p.beta0)));
    if (gamma * p.beta1 < 8.0 * m * c162)
        return not_applicable("clt_regime: needs gamma*beta1 >= 8*m*max(1,ceil(log beta0))");
    const CltConstants c = clt_constants(model);
    if (s > c.c11 * std::sqrt(gamma * p.beta1))
        return not_applicable("clt_regime: s exceeds C11*sqrt(gamma*beta1)");
    return made(Regime::gaussian_b, c.c10 * s * s, 2.0);
}

}  // namespace ustat
