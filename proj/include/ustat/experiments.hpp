#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ustat/geometry.hpp"
#include "ustat/model.hpp"

namespace ustat {

enum class ScenarioKind {
    poisson_count,       // F = alpha2 * N, N ~ Poisson(gamma*alpha1)
    falling_factorial,   // F = alpha2 * (N)_m, constant-kernel model
    edge_count,
    subgraph_count,
    power_edge,
    hyperbolic_f1,
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::poisson_count;

    // constant-kernel models
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    int m = 1;

    // geometric models
    SpaceSpec space{0.0, 2};
    double window_radius = 1.0;
    double rho = 0.1;
    double tau = 0.0;
    SmallGraph h = SmallGraph::edge;

    // hyperbolic hyperplanes
    int hyp_d = 2;
    double hyp_r = 3.0;

    double gamma = 1.0;
    std::vector<double> t_grid;
    std::vector<double> s_grid;  // CLT-regime thresholds, in units of sqrt(V)
    long long replications = 100000;
    uint64_t seed = 1;
    double ci_level = 0.99;
    enum class Centering { calibration, analytic } centering = Centering::calibration;
    std::vector<std::string> methods;

    void validate() const;
};

struct TailEstimate {
    double t = 0.0;
    long long exceed_count = 0;
    long long n = 0;
    double point_estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
};

// Exact two-sided binomial confidence interval.
std::pair<double, double> clopper_pearson(long long successes, long long n, double level);

// One functional value per replicate; replicate i of batch b draws from
// stream b * replications + i, so results do not depend on scheduling.
std::vector<double> simulate_values(const Scenario& sc, uint64_t batch, Exec exec);

// Analytic mean when the scenario has one.
std::optional<double> analytic_mean(const Scenario& sc);

struct SimulationRun {
    Scenario scenario;
    double center = 0.0;
    bool analytic_center = false;
    double calib_sd = 0.0;       // sd of the calibration batch
    std::vector<double> values;  // main batch

    TailEstimate estimate(double t, Tail tail) const;
    std::vector<TailEstimate> estimates(std::span<const double> grid, Tail tail) const;
};

SimulationRun run_simulation(const Scenario& sc, Exec exec = Exec::parallel);

struct TailReport {
    double center = 0.0;
    bool analytic_center = false;
    std::vector<TailEstimate> two_sided, upper, lower;
};

TailReport run_tails(const Scenario& sc, Exec exec = Exec::parallel);

struct VerifyLine {
    double t = 0.0;
    bool applicable = false;
    double bound = 1.0;
    TailEstimate estimate;
    bool pass = true;
    double log_margin = 0.0;  // log(bound / point_estimate)
};

struct VerifyReport {
    std::string method;
    std::vector<VerifyLine> lines;
    bool all_pass = true;
};

VerifyReport verify_bounds(std::span<const TailEstimate> estimates,
                           const std::function<std::optional<double>(double)>& bound_curve,
                           const std::string& method = "");

// The assumption model a scenario's bounds are evaluated against.
UStatModel scenario_model(const Scenario& sc);

struct MethodCurve {
    std::string method;
    Tail tail = Tail::two_sided;
    bool s_units = false;  // thresholds are multiples of the empirical sd
    std::function<std::optional<double>(double)> bound;
};

// method in {main, unified, wu, wu-lower, largeorder, bp, cc, clt, hyp-wu, hyp-a1}
MethodCurve method_curve(const Scenario& sc, const std::string& method);

// Full pipeline: simulate once, evaluate every configured method.
std::vector<VerifyReport> verify_scenario(const Scenario& sc, const SimulationRun& run);

struct MomentCheckLine {
    int ell = 0;
    double mc = 0.0;
    double se = 0.0;
    double exact = 0.0;
    double z = 0.0;
    bool pass = true;  // |z| <= 4
};

std::vector<MomentCheckLine> moment_mc_check(const Scenario& sc, std::span<const int> ells,
                                             Exec exec = Exec::parallel);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& sc);
nlohmann::json report_to_json(const Scenario& sc, const SimulationRun& run,
                              std::span<const VerifyReport> reports);
void report_to_csv(std::ostream& os, std::span<const VerifyReport> reports);

}  // namespace ustat
