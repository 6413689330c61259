#include "ustat/model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace ustat {

void A1Params::validate() const {
    if (beta0 < 1.0) throw std::invalid_argument("A1: beta0 must be >= 1");
    if (beta1 <= 0.0 || beta2 <= 0.0) throw std::invalid_argument("A1: beta1, beta2 must be > 0");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("A1: q must lie in [0,1]");
}

void A2Params::validate() const {
    if (alpha1 <= 0.0 || alpha2 <= 0.0) throw std::invalid_argument("A2: alphas must be > 0");
}

void A3Params::validate() const {
    if (M <= 0.0 || C_gLambda <= 0.0) throw std::invalid_argument("A3: M, C(g,Lambda) must be > 0");
    if (f_L1 < 0.0) throw std::invalid_argument("A3: ||f||_L1 must be >= 0");
}

void A4Params::validate() const {
    if (theta1 <= 0.0 || theta2 <= 0.0) throw std::invalid_argument("A4: thetas must be > 0");
    if (m < 1) throw std::invalid_argument("A4: m must be >= 1");
}

A1Params a2_to_a1(const A2Params& p) {
    p.validate();
    return A1Params{1.0, p.alpha1, p.alpha2, 0.0};
}

A1Params a3_to_a1(const A3Params& p, int m, double s) {
    p.validate();
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("a3_to_a1: s must lie in [0,1]");
    if (m < 1) throw std::invalid_argument("a3_to_a1: m must be >= 1");
    const double ratio = p.f_L1 / (p.M * std::pow(p.C_gLambda, m));
    const double big_r = std::max(1.0, ratio);
    A1Params out;
    out.beta0 = 1.0;
    out.q = 0.0;
    out.beta1 = p.C_gLambda * std::pow(big_r, s / m);
    out.beta2 = p.M * std::pow(big_r, (1.0 - s) / 2.0);
    return out;
}

A1Params UStatModel::a1() const {
    if (const auto* a1p = std::get_if<A1Params>(&assumption)) return *a1p;
    if (const auto* a2p = std::get_if<A2Params>(&assumption)) return a2_to_a1(*a2p);
    return a3_to_a1(std::get<A3Params>(assumption), m, a3_s);
}

void UStatModel::validate() const {
    if (m < 1) throw std::invalid_argument("model: m must be >= 1");
    std::visit([](const auto& p) { p.validate(); }, assumption);
    if (f1_norm_sq) {
        if (*f1_norm_sq < 0.0) throw std::invalid_argument("model: f1_norm_sq must be >= 0");
        const A1Params p = a1();
        const double cap = std::pow(2.0, p.q) * double(m) * double(m) * p.beta0 * p.beta2 *
                           p.beta2 * std::pow(p.beta1, 2 * m - 1);
        if (*f1_norm_sq > cap * (1.0 + 1e-12))
            throw std::invalid_argument("model: f1_norm_sq exceeds the (A1) k=1 integral bound");
    }
    if (variance && *variance < 0.0) throw std::invalid_argument("model: variance must be >= 0");
}

std::pair<double, double> variance_window(const UStatModel& model, double gamma, double cst_c47) {
    model.validate();
    if (!model.f1_norm_sq)
        throw std::invalid_argument("variance_window: f1_norm_sq is required");
    const A1Params p = model.a1();
    if (gamma * p.beta1 < cst_c47)
        throw std::domain_error("variance_window: intensity too small, needs gamma*beta1 >= c47");
    const int m = model.m;
    const double lower = std::pow(gamma, 2 * m - 1) * *model.f1_norm_sq;
    const double upper = std::pow(2.0, p.q) * p.beta0 * double(m) * double(m) *
                         std::pow(std::pow(2.0, p.q) / cst_c47 * m + 1.0, m - 1) * p.beta2 *
                         p.beta2 * std::pow(gamma * p.beta1, 2 * m - 1);
    return {lower, upper};
}

UStatModel model_from_json(const nlohmann::json& j) {
    UStatModel model;
    model.m = j.at("m").get<int>();
    const auto& a = j.at("assumption");
    const std::string type = a.at("type").get<std::string>();
    if (type == "A1") {
        A1Params p;
        p.beta0 = a.value("beta0", 1.0);
        p.beta1 = a.at("beta1").get<double>();
        p.beta2 = a.at("beta2").get<double>();
        p.q = a.value("q", 0.0);
        model.assumption = p;
    } else if (type == "A2") {
        model.assumption = A2Params{a.at("alpha1").get<double>(), a.at("alpha2").get<double>()};
    } else if (type == "A3") {
        model.assumption =
            A3Params{a.at("M").get<double>(), a.at("C_gLambda").get<double>(),
                     a.value("f_L1", 0.0)};
        model.a3_s = a.value("s", 0.0);
    } else {
        throw std::invalid_argument("model: unknown assumption type '" + type + "'");
    }
    if (j.contains("f1_norm_sq")) model.f1_norm_sq = j.at("f1_norm_sq").get<double>();
    if (j.contains("variance")) model.variance = j.at("variance").get<double>();
    model.kernel_nonneg = j.value("kernel_nonneg", false);
    model.validate();
    return model;
}

nlohmann::json model_to_json(const UStatModel& model) {
    nlohmann::json j;
    j["m"] = model.m;
    nlohmann::json a;
    if (const auto* p = std::get_if<A1Params>(&model.assumption)) {
        a = {{"type", "A1"}, {"beta0", p->beta0}, {"beta1", p->beta1},
             {"beta2", p->beta2}, {"q", p->q}};
    } else if (const auto* p = std::get_if<A2Params>(&model.assumption)) {
        a = {{"type", "A2"}, {"alpha1", p->alpha1}, {"alpha2", p->alpha2}};
    } else {
        const auto& a3 = std::get<A3Params>(model.assumption);
        a = {{"type", "A3"}, {"M", a3.M}, {"C_gLambda", a3.C_gLambda}, {"f_L1", a3.f_L1},
             {"s", model.a3_s}};
    }
    j["assumption"] = a;
    if (model.f1_norm_sq) j["f1_norm_sq"] = *model.f1_norm_sq;
    if (model.variance) j["variance"] = *model.variance;
    if (model.kernel_nonneg) j["kernel_nonneg"] = true;
    return j;
}

}  // namespace ustat
