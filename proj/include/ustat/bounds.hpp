#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ustat/model.hpp"

namespace ustat {

// Explicit constants of the main concentration theorem.
struct RateConstants {
    double c26 = 0, c23 = 0, c24 = 0, c11 = 0, c9 = 0;
    double c15 = 0, c16 = 0, c17 = 0, c27 = 0;
};

enum class Regime { sub_variance_a, gaussian_b, poisson_log_c, unified_d, not_applicable };
enum class Tail { two_sided, upper, lower };

struct BoundResult {
    Regime regime = Regime::not_applicable;
    double rate = 0.0;        // exponent I(gamma,t) >= 0
    double prob_bound = 1.0;  // min(1, factor * exp(-rate))
    bool preconditions_met = false;
    std::string reason;       // populated when not applicable
};

RateConstants main_constants(const UStatModel& model);

// Regime-selected main bound: (a) for t <= c24 γ^{m-1/2}, (b) up to c17 γ^m,
// (c) beyond; boundaries belong to the upper regime. Requires γ >= c11 for
// (a)/(b) and γ >= c9 for (c).
BoundResult main_bound(const UStatModel& model, double gamma, double t,
                       Tail tail = Tail::two_sided);

// Unified bound (d), defined whenever β₁γ >= 8mβ₀.
BoundResult unified_bound(const UStatModel& model, double gamma, double t,
                          Tail tail = Tail::two_sided);

// P(P_α >= y) <= (eα/y)^y for y >= α+1.
std::optional<double> poisson_tail_upper(double alpha, double y);

struct PoissonTailLower {
    double value = 0.0;
    double c14 = 0.0;
    double c19 = 0.0;
};

// P(P_α >= y) >= (c14 α/y)^y for α > C1 and y >= C2 α. The constant c19 in
// c14 = min(1,C1) / (e^{1/C2} c19) is certified numerically, see c19_constant.
std::optional<PoissonTailLower> poisson_tail_lower(double alpha, double y, double C1, double C2);

// Smallest c such that ceil(y)! <= (c y)^y for all y >= y_min, certified via
// the Robbins upper bound for the factorial on a scanned range. Deterministic.
double c19_constant(double y_min);

// Poisson-route tail bounds. centred=true gives the two-sided bound around
// the mean (doubled threshold, halved t inside); centred=false bounds
// P(F_m >= t) directly.
BoundResult largeorder_upper(const A2Params& p, int m, double gamma, double t, bool centred);

struct LargeOrderLower {
    double value = 0.0;      // lower bound on P(F - EF >= t); may underflow
    double log_value = 0.0;  // its logarithm, safe for tiny bounds
    double c1905c = 0.0;     // 2 θ₂^{-1/m}
    double c1905d = 0.0;     // grid-certified validity threshold multiplier
    double c14 = 0.0;
    double c18 = 0.0;
    bool grid_certified = true;
};

// Anti-concentration lower bound, valid for γ > 1, t >= c1905d γ^m; the
// threshold constant is certified by bisection over a verification grid.
std::optional<LargeOrderLower> largeorder_lower(const A4Params& p, double f_L1, int m,
                                                double gamma, double t);

// Lower-tail bound for non-negative kernels. c47 <= 0 selects the default
// 8 m β₀. When the exact weighted variance sum m²V = Σ γ^{2m-k} k k! ||f_k||²
// is supplied the sharper exp(-t²/(2m²V)) is returned.
BoundResult lower_tail_bp(const UStatModel& model, double gamma, double t, double c47 = 0.0,
                          std::optional<double> m_squared_V = std::nullopt);

struct WuBounds {
    double upper_tail = 1.0;
    std::optional<double> lower_tail;  // needs f >= 0
};

// Order-1 bounds: exp(-(t/2α₂)log(1+t/(γα₁α₂))) and exp(-t²/(2γα₂²α₁)).
WuBounds wu_order1(const A2Params& p, double gamma, double t, bool kernel_nonneg = true);

// exp(-(1+c43²)^{-1} t²/V) for 0 <= t < c43 sqrt(V).
double chebyshev_cantelli(double variance, double t, double c43);

// (A1)-specialised Chebyshev-Cantelli with C44 = 2^q β₀ m² (2^q m/c47+1)^{m-1}(1+c43²).
BoundResult chebyshev_cantelli_a1(const UStatModel& model, double gamma, double t, double c43,
                                  double c47);

struct CltConstants {
    double c10 = 0.0;
    double c11 = 0.0;
};

CltConstants clt_constants(const UStatModel& model);

// 2 exp(-C10 s²) for 0 <= s <= C11 sqrt(γβ₁); needs γβ₁ >= 8m max(1,⌈log β₀⌉).
BoundResult clt_regime(const UStatModel& model, double gamma, double s);

}  // namespace ustat
