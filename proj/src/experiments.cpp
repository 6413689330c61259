#include "ustat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gsl/gsl_cdf.h>
#include <nlohmann/json.hpp>

#include "ustat/bounds.hpp"
#include "ustat/combinat.hpp"
#include "ustat/moments.hpp"
#include "ustat/quadrature.hpp"
#include "ustat/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustat {

void Scenario::validate() const {
    if (replications < 1) throw std::invalid_argument("scenario: replications must be >= 1");
    if (ci_level <= 0.0 || ci_level >= 1.0)
        throw std::invalid_argument("scenario: ci_level must lie in (0,1)");
    auto sorted = [](const std::vector<double>& g) {
        return std::is_sorted(g.begin(), g.end());
    };
    if (!sorted(t_grid) || !sorted(s_grid))
        throw std::invalid_argument("scenario: grids must be sorted");
    if (gamma <= 0.0) throw std::invalid_argument("scenario: gamma must be > 0");
}

namespace {

// Beta(a,b) quantile by monotone bisection on the regularized incomplete
// beta; GSL's closed inverse is not reliable for extreme shape parameters.
double beta_quantile(double p, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gsl_cdf_beta_P(mid, a, b) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> clopper_pearson(long long successes, long long n, double level) {
    if (n < 1 || successes < 0 || successes > n)
        throw std::invalid_argument("clopper_pearson: bad counts");
    const double alpha = 1.0 - level;
    const double lo = successes == 0
                          ? 0.0
                          : beta_quantile(alpha / 2.0, double(successes),
                                          double(n - successes + 1));
    const double hi = successes == n
                          ? 1.0
                          : beta_quantile(1.0 - alpha / 2.0, double(successes + 1),
                                          double(n - successes));
    return {lo, hi};
}

namespace {

struct GeometricContext {
    std::optional<BallSampler> ball;
    std::optional<ChordSampler> chords;
};

GeometricContext make_context(const Scenario& sc) {
    GeometricContext ctx;
    switch (sc.kind) {
        case ScenarioKind::edge_count:
        case ScenarioKind::subgraph_count:
        case ScenarioKind::power_edge:
            ctx.ball.emplace(sc.space, sc.window_radius);
            break;
        case ScenarioKind::hyperbolic_f1:
            ctx.chords.emplace(sc.hyp_d, sc.hyp_r);
            break;
        default:
            break;
    }
    return ctx;
}

double replicate_value(const Scenario& sc, const GeometricContext& ctx, uint64_t stream) {
    switch (sc.kind) {
        case ScenarioKind::poisson_count: {
            Rng rng(sc.seed, stream);
            return sc.alpha2 * double(rng.poisson(sc.gamma * sc.alpha1));
        }
        case ScenarioKind::falling_factorial: {
            Rng rng(sc.seed, stream);
            const double n = double(rng.poisson(sc.gamma * sc.alpha1));
            double ff = 1.0;
            for (int i = 0; i < sc.m; ++i) ff *= n - i;
            return sc.alpha2 * ff;
        }
        case ScenarioKind::edge_count: {
            const PointSample s = ctx.ball->sample(sc.gamma, sc.seed, stream);
            return double(edge_count(s, sc.rho, Exec::serial));
        }
        case ScenarioKind::subgraph_count: {
            const PointSample s = ctx.ball->sample(sc.gamma, sc.seed, stream);
            return double(included_subgraph_count(s, sc.rho, sc.h));
        }
        case ScenarioKind::power_edge: {
            const PointSample s = ctx.ball->sample(sc.gamma, sc.seed, stream);
            return power_edge_length(s, sc.rho, sc.tau, Exec::serial);
        }
        case ScenarioKind::hyperbolic_f1: {
            const ChordSample s = ctx.chords->sample(sc.gamma, sc.seed, stream);
            return f1_hyperbolic(s);
        }
    }
    throw std::logic_error("replicate_value: unknown kind");
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double sd_of(std::span<const double> v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / double(v.size() - 1));
}

}  // namespace

std::vector<double> simulate_values(const Scenario& sc, uint64_t batch, Exec exec) {
    sc.validate();
    const GeometricContext ctx = make_context(sc);
    const long long n = sc.replications;
    std::vector<double> values(n);
    const uint64_t base = batch * static_cast<uint64_t>(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long long i = 0; i < n; ++i) values[i] = replicate_value(sc, ctx, base + i);
    } else {
        for (long long i = 0; i < n; ++i) values[i] = replicate_value(sc, ctx, base + i);
    }
    return values;
}

std::optional<double> analytic_mean(const Scenario& sc) {
    switch (sc.kind) {
        case ScenarioKind::poisson_count:
            return sc.alpha2 * sc.gamma * sc.alpha1;
        case ScenarioKind::falling_factorial:
            return sc.alpha2 * std::pow(sc.gamma * sc.alpha1, sc.m);
        case ScenarioKind::hyperbolic_f1: {
            // gamma * integral of the chord volume against the hit density
            const int d = sc.hyp_d;
            const double r = sc.hyp_r;
            return sc.gamma * 2.0 *
                   integrate([d, r](double s) {
                       return std::pow(std::cosh(s), d - 1) * chord_length(d, r, s);
                   }, 0.0, r, 1e-10);
        }
        default:
            return std::nullopt;  // window boundary effects, no closed form shipped
    }
}

TailEstimate SimulationRun::estimate(double t, Tail tail) const {
    TailEstimate e;
    e.t = t;
    e.n = static_cast<long long>(values.size());
    for (double v : values) {
        const double dev = v - center;
        const bool hit = tail == Tail::two_sided ? std::abs(dev) >= t
                        : tail == Tail::upper    ? dev >= t
                                                 : -dev >= t;
        if (hit) ++e.exceed_count;
    }
    e.point_estimate = double(e.exceed_count) / double(e.n);
    std::tie(e.ci_low, e.ci_high) = clopper_pearson(e.exceed_count, e.n, scenario.ci_level);
    return e;
}

std::vector<TailEstimate> SimulationRun::estimates(std::span<const double> grid, Tail tail) const {
    std::vector<TailEstimate> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(estimate(t, tail));
    return out;
}

SimulationRun run_simulation(const Scenario& sc, Exec exec) {
    sc.validate();
    SimulationRun run;
    run.scenario = sc;
    const std::vector<double> calib = simulate_values(sc, 0, exec);
    const double calib_mean = mean_of(calib);
    run.calib_sd = calib.size() > 1 ? sd_of(calib, calib_mean) : 0.0;
    if (sc.centering == Scenario::Centering::analytic) {
        const auto mu = analytic_mean(sc);
        if (!mu) throw std::invalid_argument("scenario: no analytic mean available");
        run.center = *mu;
        run.analytic_center = true;
    } else {
        run.center = calib_mean;
    }
    run.values = simulate_values(sc, 1, exec);
    return run;
}

TailReport run_tails(const Scenario& sc, Exec exec) {
    const SimulationRun run = run_simulation(sc, exec);
    TailReport rep;
    rep.center = run.center;
    rep.analytic_center = run.analytic_center;
    rep.two_sided = run.estimates(sc.t_grid, Tail::two_sided);
    rep.upper = run.estimates(sc.t_grid, Tail::upper);
    rep.lower = run.estimates(sc.t_grid, Tail::lower);
    return rep;
}

VerifyReport verify_bounds(std::span<const TailEstimate> estimates,
                           const std::function<std::optional<double>(double)>& bound_curve,
                           const std::string& method) {
    VerifyReport rep;
    rep.method = method;
    for (const auto& e : estimates) {
        VerifyLine line;
        line.t = e.t;
        line.estimate = e;
        const auto b = bound_curve(e.t);
        if (!b) {
            line.applicable = false;
            line.pass = true;  // theorem silent here
        } else {
            line.applicable = true;
            line.bound = *b;
            line.pass = e.ci_low <= *b;
            line.log_margin = std::log(*b / std::max(e.point_estimate, 1e-300));
        }
        if (!line.pass) rep.all_pass = false;
        rep.lines.push_back(line);
    }
    return rep;
}

UStatModel scenario_model(const Scenario& sc) {
    UStatModel model;
    switch (sc.kind) {
        case ScenarioKind::poisson_count: {
            model.m = 1;
            model.assumption = A2Params{sc.alpha1, sc.alpha2};
            model.f1_norm_sq = sc.alpha2 * sc.alpha2 * sc.alpha1;
            model.variance = sc.alpha2 * sc.alpha2 * sc.gamma * sc.alpha1;
            model.kernel_nonneg = true;
            break;
        }
        case ScenarioKind::falling_factorial: {
            model.m = sc.m;
            model.assumption = A2Params{sc.alpha1, sc.alpha2};
            model.f1_norm_sq = double(sc.m) * sc.m * sc.alpha2 * sc.alpha2 *
                               std::pow(sc.alpha1, 2 * sc.m - 1);
            model.variance =
                centred_moment_constant_kernel(sc.alpha1, sc.alpha2, sc.gamma, sc.m, 2);
            model.kernel_nonneg = true;
            break;
        }
        case ScenarioKind::edge_count:
            return subgraph_params(sc.space, WindowSpec::ball(sc.space, sc.window_radius),
                                   SmallGraph::edge, sc.rho, 0.0)
                .model;
        case ScenarioKind::subgraph_count:
            return subgraph_params(sc.space, WindowSpec::ball(sc.space, sc.window_radius), sc.h,
                                   sc.rho, 0.0)
                .model;
        case ScenarioKind::power_edge:
            return power_edge_params(sc.space, WindowSpec::ball(sc.space, sc.window_radius),
                                     sc.rho, sc.tau, 0.0)
                .model;
        case ScenarioKind::hyperbolic_f1: {
            model.m = 1;
            model.assumption = hyperbolic_f1_params(sc.hyp_d, sc.hyp_r);
            if (sc.hyp_r >= 3.0) {
                // certified lower bound on ||f_1||^2
                const int d = sc.hyp_d;
                const double r = sc.hyp_r;
                const double w = unit_sphere_area(std::max(2, d - 1));
                if (d == 2)
                    model.f1_norm_sq = std::exp(r);
                else if (d == 3)
                    model.f1_norm_sq = w * w / 64.0 * r * std::exp(2.0 * r);
                else
                    model.f1_norm_sq = std::pow(2.0, -4.0 * d + 6.0) * w * w /
                                       std::pow(double(d - 2), 3) * std::exp(2.0 * r * (d - 2));
            }
            model.kernel_nonneg = true;
            break;
        }
    }
    model.validate();
    return model;
}

MethodCurve method_curve(const Scenario& sc, const std::string& method) {
    MethodCurve mc;
    mc.method = method;
    const double gamma = sc.gamma;
    if (method == "main") {
        mc.tail = Tail::two_sided;
        const UStatModel model = scenario_model(sc);
        mc.bound = [model, gamma](double t) -> std::optional<double> {
            const BoundResult r = main_bound(model, gamma, t, Tail::two_sided);
            if (!r.preconditions_met) return std::nullopt;
            return r.prob_bound;
        };
        return mc;
    }
    if (method == "unified") {
        mc.tail = Tail::two_sided;
        const UStatModel model = scenario_model(sc);
        mc.bound = [model, gamma](double t) -> std::optional<double> {
            const BoundResult r = unified_bound(model, gamma, t, Tail::two_sided);
            if (!r.preconditions_met) return std::nullopt;
            return r.prob_bound;
        };
        return mc;
    }
    if (method == "wu" || method == "wu-lower") {
        if (sc.kind != ScenarioKind::poisson_count)
            throw std::invalid_argument("method_curve: wu applies to order-1 A2 scenarios");
        const A2Params p{sc.alpha1, sc.alpha2};
        if (method == "wu") {
            mc.tail = Tail::upper;
            mc.bound = [p, gamma](double t) -> std::optional<double> {
                return wu_order1(p, gamma, t).upper_tail;
            };
        } else {
            mc.tail = Tail::lower;
            mc.bound = [p, gamma](double t) -> std::optional<double> {
                return wu_order1(p, gamma, t).lower_tail;
            };
        }
        return mc;
    }
    if (method == "largeorder") {
        mc.tail = Tail::two_sided;
        if (sc.kind != ScenarioKind::poisson_count && sc.kind != ScenarioKind::falling_factorial)
            throw std::invalid_argument("method_curve: largeorder needs an A2 scenario");
        const A2Params p{sc.alpha1, sc.alpha2};
        const int m = sc.kind == ScenarioKind::poisson_count ? 1 : sc.m;
        mc.bound = [p, m, gamma](double t) -> std::optional<double> {
            const BoundResult r = largeorder_upper(p, m, gamma, t, true);
            if (!r.preconditions_met) return std::nullopt;
            return r.prob_bound;
        };
        return mc;
    }
    if (method == "bp") {
        mc.tail = Tail::lower;
        const UStatModel model = scenario_model(sc);
        mc.bound = [model, gamma](double t) -> std::optional<double> {
            const BoundResult r = lower_tail_bp(model, gamma, t);
            if (!r.preconditions_met) return std::nullopt;
            return r.prob_bound;
        };
        return mc;
    }
    if (method == "cc") {
        mc.tail = Tail::upper;
        const UStatModel model = scenario_model(sc);
        mc.bound = [model](double t) -> std::optional<double> {
            if (!model.variance || *model.variance <= 0.0) return std::nullopt;
            const double c43 = 4.0;
            if (t >= c43 * std::sqrt(*model.variance)) return std::nullopt;
            return chebyshev_cantelli(*model.variance, t, c43);
        };
        return mc;
    }
    if (method == "clt") {
        mc.tail = Tail::two_sided;
        mc.s_units = true;
        const UStatModel model = scenario_model(sc);
        mc.bound = [model, gamma](double s) -> std::optional<double> {
            const BoundResult r = clt_regime(model, gamma, s);
            if (!r.preconditions_met) return std::nullopt;
            return r.prob_bound;
        };
        return mc;
    }
    if (method == "hyp-wu" || method == "hyp-a1") {
        if (sc.kind != ScenarioKind::hyperbolic_f1)
            throw std::invalid_argument("method_curve: hyperbolic methods need hyperbolic_f1");
        const int d = sc.hyp_d;
        const double r = sc.hyp_r;
        const HypMethod hm = method == "hyp-wu" ? HypMethod::wu : HypMethod::a1;
        mc.tail = hm == HypMethod::wu ? Tail::upper : Tail::two_sided;
        mc.bound = [d, r, gamma, hm](double t) -> std::optional<double> {
            const BoundResult res = hyperbolic_rate(d, r, gamma, t, hm);
            if (!res.preconditions_met) return std::nullopt;
            return res.prob_bound;
        };
        return mc;
    }
    throw std::invalid_argument("method_curve: unknown method '" + method + "'");
}

std::vector<VerifyReport> verify_scenario(const Scenario& sc, const SimulationRun& run) {
    std::vector<VerifyReport> reports;
    for (const auto& name : sc.methods) {
        const MethodCurve mc = method_curve(sc, name);
        std::vector<TailEstimate> est;
        if (mc.s_units) {
            std::vector<double> thresholds;
            for (double s : sc.s_grid) thresholds.push_back(s * run.calib_sd);
            est = run.estimates(thresholds, mc.tail);
            VerifyReport rep;
            rep.method = name;
            for (size_t i = 0; i < est.size(); ++i) {
                VerifyLine line;
                line.t = sc.s_grid[i];
                line.estimate = est[i];
                const auto b = mc.bound(sc.s_grid[i]);
                if (!b) {
                    line.applicable = false;
                } else {
                    line.applicable = true;
                    line.bound = *b;
                    line.pass = est[i].ci_low <= *b;
                    line.log_margin =
                        std::log(*b / std::max(est[i].point_estimate, 1e-300));
                }
                if (!line.pass) rep.all_pass = false;
                rep.lines.push_back(line);
            }
            reports.push_back(std::move(rep));
        } else {
            est = run.estimates(sc.t_grid, mc.tail);
            reports.push_back(verify_bounds(est, mc.bound, name));
        }
    }
    return reports;
}

std::vector<MomentCheckLine> moment_mc_check(const Scenario& sc, std::span<const int> ells,
                                             Exec exec) {
    if (sc.kind != ScenarioKind::poisson_count && sc.kind != ScenarioKind::falling_factorial)
        throw std::invalid_argument("moment_mc_check: needs a constant-kernel scenario");
    const int m = sc.kind == ScenarioKind::poisson_count ? 1 : sc.m;
    const std::vector<double> values = simulate_values(sc, 1, exec);
    const long long n = static_cast<long long>(values.size());
    const double mean = mean_of(values);

    int max_ell = 2;
    for (int ell : ells) max_ell = std::max(max_ell, ell);
    // centred power sums S_p = sum (x - mean)^p
    std::vector<double> s_pow(2 * max_ell + 1, 0.0);
    for (double v : values) {
        const double d = v - mean;
        double p = 1.0;
        for (int j = 1; j <= 2 * max_ell; ++j) {
            p *= d;
            s_pow[j] += p;
        }
    }

    std::vector<MomentCheckLine> out;
    for (int ell : ells) {
        MomentCheckLine line;
        line.ell = ell;
        line.mc = s_pow[ell] / double(n);
        // jackknife over leave-one-out estimates, via the binomial expansion
        // of sum_j (x_j - mean - delta_i)^ell with delta_i = (x_i - mean)/(n-1)
        double jk_mean = 0.0, jk_sq = 0.0;
        std::vector<double> binom(ell + 1);
        for (int p = 0; p <= ell; ++p)
            binom[p] = binomial(ell, p).get_d();
        for (long long i = 0; i < n; ++i) {
            const double di = values[i] - mean;
            const double delta = di / double(n - 1);
            double total = 0.0;
            double dpow = 1.0;  // (-delta)^(ell-p) built from the top
            // sum_p C(ell,p) S_p (-delta)^{ell-p}
            for (int p = ell; p >= 0; --p) {
                const double sp = p == 0 ? double(n) : s_pow[p];
                total += binom[p] * sp * dpow;
                dpow *= -delta;
            }
            double self = 1.0;  // (x_i - mean - delta)^ell
            const double zi = di - delta;
            for (int p = 0; p < ell; ++p) self *= zi;
            const double loo = (total - self) / double(n - 1);
            jk_mean += loo;
            jk_sq += loo * loo;
        }
        jk_mean /= double(n);
        const double jk_var = (double(n) - 1.0) / double(n) * (jk_sq - double(n) * jk_mean * jk_mean);
        line.se = std::sqrt(std::max(0.0, jk_var));
        line.exact = centred_moment_constant_kernel(sc.alpha1, sc.alpha2, sc.gamma, m, ell);
        line.z = line.se > 0.0 ? (line.mc - line.exact) / line.se : 0.0;
        line.pass = std::abs(line.z) <= 4.0;
        out.push_back(line);
    }
    return out;
}

namespace {

ScenarioKind kind_from_string(const std::string& s) {
    if (s == "poisson_count") return ScenarioKind::poisson_count;
    if (s == "falling_factorial") return ScenarioKind::falling_factorial;
    if (s == "edge_count") return ScenarioKind::edge_count;
    if (s == "subgraph_count") return ScenarioKind::subgraph_count;
    if (s == "power_edge") return ScenarioKind::power_edge;
    if (s == "hyperbolic_f1") return ScenarioKind::hyperbolic_f1;
    throw std::invalid_argument("scenario: unknown kind '" + s + "'");
}

std::string kind_to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::poisson_count: return "poisson_count";
        case ScenarioKind::falling_factorial: return "falling_factorial";
        case ScenarioKind::edge_count: return "edge_count";
        case ScenarioKind::subgraph_count: return "subgraph_count";
        case ScenarioKind::power_edge: return "power_edge";
        case ScenarioKind::hyperbolic_f1: return "hyperbolic_f1";
    }
    throw std::logic_error("kind_to_string");
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario sc;
    sc.name = j.value("name", "scenario");
    sc.kind = kind_from_string(j.at("kind").get<std::string>());
    sc.alpha1 = j.value("alpha1", 1.0);
    sc.alpha2 = j.value("alpha2", 1.0);
    sc.m = j.value("m", 1);
    if (j.contains("space")) {
        sc.space.kappa = j["space"].value("kappa", 0.0);
        sc.space.d = j["space"].value("d", 2);
    }
    sc.window_radius = j.value("window_radius", 1.0);
    sc.rho = j.value("rho", 0.1);
    sc.tau = j.value("tau", 0.0);
    if (j.contains("H")) sc.h = graph_from_name(j.at("H").get<std::string>());
    sc.hyp_d = j.value("hyp_d", 2);
    sc.hyp_r = j.value("hyp_r", 3.0);
    sc.gamma = j.at("gamma").get<double>();
    if (j.contains("t_grid")) sc.t_grid = j.at("t_grid").get<std::vector<double>>();
    if (j.contains("s_grid")) sc.s_grid = j.at("s_grid").get<std::vector<double>>();
    sc.replications = j.value("replications", 100000LL);
    sc.seed = j.value("seed", 1ULL);
    sc.ci_level = j.value("ci_level", 0.99);
    sc.centering = j.value("centering", std::string("calibration")) == "analytic"
                       ? Scenario::Centering::analytic
                       : Scenario::Centering::calibration;
    if (j.contains("methods")) sc.methods = j.at("methods").get<std::vector<std::string>>();
    sc.validate();
    return sc;
}

nlohmann::json scenario_to_json(const Scenario& sc) {
    nlohmann::json j;
    j["name"] = sc.name;
    j["kind"] = kind_to_string(sc.kind);
    j["alpha1"] = sc.alpha1;
    j["alpha2"] = sc.alpha2;
    j["m"] = sc.m;
    j["space"] = {{"kappa", sc.space.kappa}, {"d", sc.space.d}};
    j["window_radius"] = sc.window_radius;
    j["rho"] = sc.rho;
    j["tau"] = sc.tau;
    j["H"] = graph_name(sc.h);
    j["hyp_d"] = sc.hyp_d;
    j["hyp_r"] = sc.hyp_r;
    j["gamma"] = sc.gamma;
    j["t_grid"] = sc.t_grid;
    j["s_grid"] = sc.s_grid;
    j["replications"] = sc.replications;
    j["seed"] = sc.seed;
    j["ci_level"] = sc.ci_level;
    j["centering"] = sc.centering == Scenario::Centering::analytic ? "analytic" : "calibration";
    j["methods"] = sc.methods;
    return j;
}

nlohmann::json report_to_json(const Scenario& sc, const SimulationRun& run,
                              std::span<const VerifyReport> reports) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["scenario"] = scenario_to_json(sc);
    j["center"] = run.center;
    j["centering"] = run.analytic_center ? "analytic" : "calibration";
    j["calib_sd"] = run.calib_sd;
    nlohmann::json methods = nlohmann::json::array();
    bool all = true;
    for (const auto& rep : reports) {
        nlohmann::json jr;
        jr["method"] = rep.method;
        jr["all_pass"] = rep.all_pass;
        all = all && rep.all_pass;
        nlohmann::json lines = nlohmann::json::array();
        for (const auto& line : rep.lines) {
            lines.push_back({{"t", line.t},
                             {"applicable", line.applicable},
                             {"bound", line.bound},
                             {"estimate", line.estimate.point_estimate},
                             {"ci_low", line.estimate.ci_low},
                             {"ci_high", line.estimate.ci_high},
                             {"pass", line.pass},
                             {"log_margin", line.log_margin}});
        }
        jr["lines"] = lines;
        methods.push_back(jr);
    }
    j["methods"] = methods;
    j["all_pass"] = all;
    return j;
}

void report_to_csv(std::ostream& os, std::span<const VerifyReport> reports) {
    os << "method,t,estimate,ci_low,ci_high,bound,applicable,pass\n";
    for (const auto& rep : reports)
        for (const auto& line : rep.lines)
            os << rep.method << "," << line.t << "," << line.estimate.point_estimate << ","
               << line.estimate.ci_low << "," << line.estimate.ci_high << "," << line.bound << ","
               << (line.applicable ? 1 : 0) << "," << (line.pass ? 1 : 0) << "\n";
}

}  // namespace ustat
