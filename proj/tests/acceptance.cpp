// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ustat/applications.hpp"
#include "ustat/bounds.hpp"
#include "ustat/combinat.hpp"
#include "ustat/experiments.hpp"
#include "ustat/geometry.hpp"
#include "ustat/moments.hpp"
#include "ustat/quadrature.hpp"

#include "oracles.hpp"

using namespace ustat;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int index, const std::string& label, const std::function<bool()>& body) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", index,
                    label.c_str(), secs);
        if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
        if (!ok) ++failures;
        std::fflush(stdout);
    }
};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// ---- criterion 1 ------------------------------------------------------
bool combinatorial_identities() {
    for (int n = 1; n <= 10; ++n) {
        std::vector<BigInt> by_k(n + 1, 0);
        oracle::all_partitions(n, [&](const oracle::Blocks& b) {
            BigInt prod = 1;
            for (const auto& blk : b) prod *= factorial(static_cast<int>(blk.size()));
            by_k[b.size()] += prod;
        });
        for (int k = 1; k <= n; ++k)
            if (faa_di_bruno_sum(n, k) != by_k[k]) return false;
    }
    for (int ell = 2; ell <= 10; ++ell) {
        std::vector<BigInt> assoc(ell + 1, 0);
        oracle::all_partitions(ell, [&](const oracle::Blocks& b) {
            for (const auto& blk : b)
                if (blk.size() < 2) return;
            assoc[b.size()] += 1;
        });
        for (int k = 0; k <= ell; ++k)
            if (count_star2(1, ell, k) != assoc[k]) return false;
    }
    for (int m = 1; m <= 6; ++m)
        for (int ell = 2; m * ell <= 12; ++ell) {
            const int n = m * ell;
            const auto counts = count_star2_by_k(m, ell);
            for (int k = 0; k <= n; ++k) {
                const bool inside = k >= m && 2 * k <= 2 * n - ell;
                if (!inside && counts[k] != 0) return false;
                if (count_star2(m, ell, k) != counts[k]) return false;
            }
        }
    return true;
}

// ---- criterion 2 ------------------------------------------------------
bool moment_equivalence() {
    for (int m = 1; m <= 3; ++m)
        for (int ell = 2; ell <= 4; ++ell)
            for (double gamma : {0.5, 1.0, 4.0}) {
                const double a1 = 1.0, a2 = 1.0;
                const auto ki = KernelIntegrals::constant_kernel(a2, a1);
                const double via_enum = centred_moment_exact(ki, gamma, m, ell).value;
                const double via_counts =
                    centred_moment_constant_kernel(a1, a2, gamma, m, ell);
                if (!close_rel(via_enum, via_counts, 1e-12)) return false;
            }
    // ell = 2: enumeration route equals the variance-formula route
    for (int m = 1; m <= 3; ++m)
        for (double gamma : {0.5, 1.0, 4.0}) {
            const double c = 0.8, a = 1.3;
            const auto ki = KernelIntegrals::constant_kernel(c, a);
            const double via_enum = centred_moment_exact(ki, gamma, m, 2).value;
            std::vector<double> norms(m);
            for (int k = 1; k <= m; ++k) {
                const double binom_mk = binomial(m, k).get_d();
                norms[k - 1] = binom_mk * binom_mk * c * c * std::pow(a, 2 * m - k);
            }
            const double via_var = variance_exact(norms, gamma, m);
            if (!close_rel(via_enum, via_var, 1e-12)) return false;
        }
    return true;
}

// ---- criterion 3 ------------------------------------------------------
bool poisson_moment_facts() {
    for (double alpha : {0.1, 1.0, 10.0}) {
        for (int n = 1; n <= 15; ++n) {
            if (!close_rel(poisson_raw_moment(alpha, n),
                           oracle::poisson_raw_moment_recursive(alpha, n), 1e-9))
                return false;
            if (poisson_moment_bound(alpha, n) < poisson_raw_moment(alpha, n)) return false;
        }
    }
    return true;
}

// ---- criterion 4 ------------------------------------------------------
bool moment_bound_dominance() {
    for (int m = 1; m <= 2; ++m)
        for (int ell = 2; ell <= 8; ell += 2)
            for (double gb1 : {1.0, 4.0, 16.0}) {
                const A1Params p = a2_to_a1(A2Params{1.0, 1.0});
                const double exact =
                    centred_moment_constant_kernel(1.0, 1.0, gb1, m, ell);
                const double bound =
                    centred_moment_upper(p, gb1, m, ell, MomentRegime::general);
                if (exact > bound * (1 + 1e-12)) return false;
            }
    return true;
}

// ---- criterion 5 ------------------------------------------------------
Scenario base_scenario(const std::string& name, ScenarioKind kind, double gamma,
                       std::vector<double> t_grid, std::vector<std::string> methods,
                       uint64_t seed) {
    Scenario sc;
    sc.name = name;
    sc.kind = kind;
    sc.gamma = gamma;
    sc.t_grid = std::move(t_grid);
    sc.methods = std::move(methods);
    sc.replications = 100000;
    sc.seed = seed;
    return sc;
}

bool scenario_sound(const Scenario& sc) {
    const SimulationRun run = run_simulation(sc);
    const auto reports = verify_scenario(sc, run);
    bool ok = true;
    for (const auto& rep : reports) {
        if (!rep.all_pass) {
            ok = false;
            for (const auto& line : rep.lines)
                if (!line.pass)
                    std::printf("       %s/%s t=%g: ci_low=%.3g > bound=%.3g\n",
                                sc.name.c_str(), rep.method.c_str(), line.t,
                                line.estimate.ci_low, line.bound);
        }
    }
    return ok;
}

bool tail_soundness_point_counts() {
    Scenario g5 = base_scenario("point-count-5", ScenarioKind::poisson_count, 5.0,
                                {0, 1, 2, 3, 5, 8, 12, 2000},
                                {"main", "wu", "wu-lower", "largeorder", "clt"}, 101);
    g5.centering = Scenario::Centering::analytic;
    g5.s_grid = {0, 1, 2, 4};
    Scenario g100 = base_scenario("point-count-100", ScenarioKind::poisson_count, 100.0,
                                  {0, 5, 10, 15, 20, 30, 50, 3000},
                                  {"main", "wu", "wu-lower", "largeorder", "clt"}, 102);
    g100.centering = Scenario::Centering::analytic;
    g100.s_grid = {0, 0.5, 1, 2, 3, 5, 8};
    return scenario_sound(g5) && scenario_sound(g100);
}

bool tail_soundness_edge_count() {
    Scenario sc = base_scenario("edge-count", ScenarioKind::edge_count, 50.0,
                                {0, 30, 60, 120, 250, 450, 6e7}, {"main", "unified", "bp"}, 103);
    sc.space = SpaceSpec{0.0, 2};
    sc.window_radius = 1.0;
    sc.rho = 0.2;
    return scenario_sound(sc);
}

bool tail_soundness_triangles() {
    Scenario sc = base_scenario("triangle-count", ScenarioKind::subgraph_count, 50.0,
                                {0, 100, 300, 700, 1500, 1e13}, {"main", "unified"}, 104);
    sc.space = SpaceSpec{0.0, 2};
    sc.window_radius = 1.0;
    sc.rho = 0.2;
    sc.h = SmallGraph::triangle;
    return scenario_sound(sc);
}

bool tail_soundness_power_edge() {
    Scenario sc = base_scenario("power-edge", ScenarioKind::power_edge, 50.0,
                                {0, 3, 8, 20, 45, 90, 1e7}, {"main", "unified"}, 105);
    sc.space = SpaceSpec{0.0, 2};
    sc.window_radius = 1.0;
    sc.rho = 0.2;
    sc.tau = 1.0;
    return scenario_sound(sc);
}

bool tail_soundness_hyperbolic() {
    Scenario sc = base_scenario("hyperbolic-f1", ScenarioKind::hyperbolic_f1, 1.0,
                                {0, 10, 20, 40, 80, 160, 320}, {"hyp-wu", "hyp-a1"}, 106);
    sc.kind = ScenarioKind::hyperbolic_f1;
    sc.hyp_d = 2;
    sc.hyp_r = 3.0;
    sc.centering = Scenario::Centering::analytic;
    return scenario_sound(sc);
}

// ---- criterion 6 ------------------------------------------------------
bool hyperbolic_integrals() {
    for (int d : {2, 3, 4})
        for (int k : {2, 3})
            for (double r : {3.0, 5.0}) {
                const double integral =
                    2.0 * integrate(
                              [&](double s) {
                                  return std::pow(std::cosh(s), d - 1) *
                                         std::pow(chord_length(d, r, s), k);
                              },
                              0.0, r, 1e-10);
                const ChordMomentBounds b = hyperbolic_chord_moment_bounds(d, k, r);
                if (integral > b.upper * (1 + 1e-9)) return false;
                if (k == 2) {
                    if (!b.lower) return false;
                    if (integral < *b.lower * (1 - 1e-9)) return false;
                }
            }

    // simulated variance of F_1^h inside the lemma window, 4-sigma tolerance
    const int d = 2;
    const double r = 3.0, gamma = 1.0;
    const ChordSampler sampler(d, r);
    const int n = 100000;
    double sum = 0, sum2 = 0, sum3 = 0, sum4 = 0;
    for (int i = 0; i < n; ++i) {
        const double f = f1_hyperbolic(sampler.sample(gamma, 2027, i));
        sum += f;
        sum2 += f * f;
        sum3 += f * f * f;
        sum4 += f * f * f * f;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // centred fourth moment for the variance-estimator standard error
    const double m4 = sum4 / n - 4 * mean * sum3 / n + 6 * mean * mean * sum2 / n -
                      3 * mean * mean * mean * mean;
    const double se = std::sqrt(std::max(0.0, m4 - var * var) / n);
    const auto [lo, hi] = hyperbolic_variance_window(d, r, gamma);
    if (var < lo - 4 * se || var > hi + 4 * se) {
        std::printf("       var=%.4g outside [%.4g, %.4g] (se %.3g)\n", var, lo, hi, se);
        return false;
    }
    return true;
}

// ---- criterion 7 ------------------------------------------------------
bool anticoncentration_consistency() {
    const A4Params witness{1.0, 1.0, 1};
    const double f_l1 = 1.0;
    const double gamma = 2.0;

    // recover the certified threshold
    const auto probe = largeorder_lower(witness, f_l1, 1, gamma, 1e18);
    if (!probe) return false;
    const double c1905d = probe->c1905d;

    Scenario sc = base_scenario("anticonc", ScenarioKind::poisson_count, gamma, {}, {}, 107);
    sc.centering = Scenario::Centering::analytic;
    const SimulationRun run = run_simulation(sc);

    for (double mult : {1.0, 1.5, 2.5, 6.0}) {
        const double t = c1905d * gamma * mult;
        const auto lo = largeorder_lower(witness, f_l1, 1, gamma, t);
        if (!lo) return false;
        // empirical exceedance plus its 3-sigma exact-binomial allowance
        const TailEstimate e = run.estimate(t, Tail::upper);
        const auto [unused, hi3] = clopper_pearson(e.exceed_count, e.n, 0.9973);
        (void)unused;
        if (lo->value > hi3) {
            std::printf("       t=%g: lower=%.3g exceeds empirical CP=%.3g\n", t, lo->value, hi3);
            return false;
        }
        // and never above the matching upper bound
        const BoundResult up = largeorder_upper(A2Params{1.0, 1.0}, 1, gamma, t, true);
        if (up.preconditions_met && lo->log_value > std::log(2.0) - up.rate + 1e-9) {
            std::printf("       t=%g: lower rate conflicts with upper rate\n", t);
            return false;
        }
    }
    return true;
}

// ---- criterion 8 ------------------------------------------------------
bool poisson_tail_sandwich() {
    const double c1 = 0.9, c2 = 1.0;
    for (double alpha : {1.0, 2.0, 5.0})
        for (double y = alpha + 1.0; y <= 10.0 * alpha + 0.5; y += 1.0) {
            const double exact = oracle::poisson_tail_exact(alpha, y);
            const auto up = poisson_tail_upper(alpha, y);
            if (!up || *up < exact) return false;
            const auto low = poisson_tail_lower(alpha, y, c1, c2);
            if (!low || low->value > exact) return false;
        }
    return true;
}

// ---- criterion 9 ------------------------------------------------------
bool preset_regression() {
    // flat-space subgraph corollary
    for (int d : {2, 3})
        for (SmallGraph h : {SmallGraph::edge, SmallGraph::triangle}) {
            const SpaceSpec space{0.0, d};
            const double r = 2.0, rho = 0.3;
            const int n = graph_diameter(h);
            const auto preset = subgraph_params(space, WindowSpec::ball(space, r), h, rho, 0.0);
            const double kappa_d = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
            if (!close_rel(preset.beta1, kappa_d * std::pow(n * rho, d), 1e-12)) return false;
            if (!close_rel(preset.beta2, std::pow(r / (n * rho), d / 2.0), 1e-12)) return false;
        }
    // Euclidean power-edge corollary
    for (int d : {2, 3})
        for (double s : {0.0, 0.5, 1.0})
            for (double tau : {0.0, 1.0}) {
                const SpaceSpec space{0.0, d};
                const double r = 2.0, rho = 0.7;
                const auto preset =
                    power_edge_params(space, WindowSpec::ball(space, r), rho, tau, s);
                const double kappa_d = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
                const double beta1 =
                    kappa_d * std::pow(r, d * s / 2.0) * std::pow(rho, d * (1.0 - s / 2.0));
                const double beta2 = 0.5 * std::pow(r, d * (1.0 - s) / 2.0) *
                                     std::pow(rho, tau - d * (1.0 - s) / 2.0);
                const double c27 = std::pow(2.0, -47.0 - 2.0 * tau - 2.0 * d) *
                                   std::pow(rho / r, d * s / 2.0);
                if (!close_rel(preset.beta1, beta1, 1e-12)) return false;
                if (!close_rel(preset.beta2, beta2, 1e-12)) return false;
                if (!close_rel(preset.c27_app, c27, 1e-12)) return false;
            }
    // fixed-degree radius residual
    for (double kappa : {-1.0, 0.0})
        for (double gamma : {30.0, 80.0}) {
            const SpaceSpec space{kappa, 2};
            const double rho = fixed_degree_radius(space, 16.0, gamma);
            if (std::abs(gamma * ball_volume(space, rho) - 16.0) > 1e-10 * 16.0) return false;
        }
    return true;
}

}  // namespace

int main() {
    Harness h;
    h.criterion(1, "combinatorial identities", combinatorial_identities);
    h.criterion(2, "moment-formula equivalence", moment_equivalence);
    h.criterion(3, "poisson moment facts", poisson_moment_facts);
    h.criterion(4, "moment-bound dominance", moment_bound_dominance);
    h.criterion(5, "tail soundness: point counts (m=1)", tail_soundness_point_counts);
    h.criterion(5, "tail soundness: euclidean edge count", tail_soundness_edge_count);
    h.criterion(5, "tail soundness: triangle count", tail_soundness_triangles);
    h.criterion(5, "tail soundness: power-weighted edge length", tail_soundness_power_edge);
    h.criterion(5, "tail soundness: hyperbolic surface functional", tail_soundness_hyperbolic);
    h.criterion(6, "hyperbolic appendix integrals", hyperbolic_integrals);
    h.criterion(7, "anti-concentration consistency", anticoncentration_consistency);
    h.criterion(8, "exact poisson tail sandwich", poisson_tail_sandwich);
    h.criterion(9, "preset regression", preset_regression);
    if (h.failures > 0) {
        std::printf("%d criterion(s) FAILED\n", h.failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
