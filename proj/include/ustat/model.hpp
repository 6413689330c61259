#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <nlohmann/json_fwd.hpp>

namespace ustat {

struct IntensitySpec {
    double gamma = 1.0;                // intensity multiplier
    double total_mass = 1.0;           // Lambda(X); may be +inf
};

// Integral-bound assumption: |∫(f^{⊗ℓ})_σ dΛ^k| <= β0 β1^k β2^ℓ (Π|J|!)^q.
struct A1Params {
    double beta0 = 1.0;  // >= 1
    double beta1 = 1.0;  // > 0
    double beta2 = 1.0;  // > 0
    double q = 0.0;      // in [0,1]

    void validate() const;
};

// Finite total mass and bounded kernel.
struct A2Params {
    double alpha1 = 1.0;  // Lambda(X)
    double alpha2 = 1.0;  // sup |f|

    void validate() const;
};

// Metric decay model; the function g enters every formula only through
// C(g,Lambda), so only that scalar is stored.
struct A3Params {
    double M = 1.0;
    double C_gLambda = 1.0;
    double f_L1 = 0.0;  // ||f||_{L1(Lambda^m)}

    void validate() const;
};

// Positivity witnesses for the anti-concentration lower bound.
struct A4Params {
    double theta1 = 1.0;
    double theta2 = 1.0;
    int m = 1;

    void validate() const;
};

A1Params a2_to_a1(const A2Params& p);
A1Params a3_to_a1(const A3Params& p, int m, double s);

struct UStatModel {
    int m = 1;
    std::variant<A1Params, A2Params, A3Params> assumption = A1Params{};
    std::optional<double> f1_norm_sq;  // ||f_1||^2_{L2(Lambda)}
    std::optional<double> variance;
    bool kernel_nonneg = false;
    double a3_s = 0.0;  // s used when reducing an A3 assumption

    // The assumption reduced to A1 form (identity for A1).
    A1Params a1() const;
    void validate() const;
};

// Exact variance bracket: gamma^{2m-1}||f_1||^2 below, the (A1) product bound
// above; requires gamma*beta1 >= cst_c47.
std::pair<double, double> variance_window(const UStatModel& model, double gamma, double cst_c47);

UStatModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const UStatModel& model);

}  // namespace ustat
