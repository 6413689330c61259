// Command-line front end: every subcommand is a thin shell over the library.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ustat/applications.hpp"
#include "ustat/bounds.hpp"
#include "ustat/combinat.hpp"
#include "ustat/experiments.hpp"
#include "ustat/geometry.hpp"
#include "ustat/model.hpp"
#include "ustat/moments.hpp"
#include "ustat/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotApplicable = 2;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << payload.dump(2) << "\n";
    }
}

json bound_result_json(const ustat::BoundResult& r) {
    const char* regime = "not-applicable";
    switch (r.regime) {
        case ustat::Regime::sub_variance_a: regime = "sub-variance(a)"; break;
        case ustat::Regime::gaussian_b: regime = "gaussian(b)"; break;
        case ustat::Regime::poisson_log_c: regime = "poisson-log(c)"; break;
        case ustat::Regime::unified_d: regime = "unified(d)"; break;
        case ustat::Regime::not_applicable: break;
    }
    json j{{"version", ustat::kVersion},
           {"regime", regime},
           {"rate", r.rate},
           {"prob_bound", r.prob_bound},
           {"preconditions_met", r.preconditions_met}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

int cmd_enumerate(int m, int ell, std::optional<int> k_filter, const std::string& format,
                  const std::string& out_path) {
    json records = json::array();
    std::ostringstream csv;
    csv << "index,k,blocks\n";
    int index = 0;
    ustat::enumerate_star2(m, ell, [&](const ustat::Subpartition& sp) {
        if (k_filter && sp.k() != *k_filter) return;
        if (format == "csv") {
            csv << index << "," << sp.k() << ",\"";
            for (size_t b = 0; b < sp.blocks.size(); ++b) {
                if (b) csv << ";";
                for (size_t i = 0; i < sp.blocks[b].size(); ++i)
                    csv << (i ? " " : "") << sp.blocks[b][i];
            }
            csv << "\"\n";
        } else {
            records.push_back({{"blocks", sp.blocks}, {"k", sp.k()}});
        }
        ++index;
    });
    if (format == "csv") {
        if (out_path.empty())
            std::cout << csv.str();
        else
            std::ofstream(out_path) << csv.str();
    } else {
        emit(json{{"version", ustat::kVersion},
                  {"m", m},
                  {"ell", ell},
                  {"count", records.size()},
                  {"records", records}},
             out_path);
    }
    return kExitOk;
}

int cmd_moments(const std::string& model_path, int ell, double gamma, bool bound,
                const std::string& out_path) {
    const ustat::UStatModel model = ustat::model_from_json(load_json(model_path));
    json j{{"version", ustat::kVersion}, {"ell", ell}};
    if (bound) {
        const ustat::A1Params p = model.a1();
        const double general =
            ustat::centred_moment_upper(p, gamma, model.m, ell, ustat::MomentRegime::general);
        j["value"] = general;
        j["regime"] = "general";
        if (gamma * p.beta1 >= 2.0 * model.m * ell) {
            const double high = ustat::centred_moment_upper(p, gamma, model.m, ell,
                                                            ustat::MomentRegime::high_intensity);
            if (high < general) {
                j["value"] = high;
                j["regime"] = "high-intensity";
            }
            j["high_intensity"] = high;
        }
        j["general"] = general;
    } else {
        const auto* a2 = std::get_if<ustat::A2Params>(&model.assumption);
        if (!a2) {
            emit(json{{"version", ustat::kVersion},
                      {"reason", "exact moments need a constant-kernel (A2) model"}},
                 out_path);
            return kExitNotApplicable;
        }
        const auto ki = ustat::KernelIntegrals::constant_kernel(a2->alpha2, a2->alpha1);
        if (model.m * ell <= ustat::kEnumerationCap) {
            const auto res = ustat::centred_moment_exact(ki, gamma, model.m, ell);
            j["value"] = res.value;
            j["term_count"] = res.term_count;
        } else {
            j["value"] = ustat::centred_moment_constant_kernel(a2->alpha1, a2->alpha2, gamma,
                                                               model.m, ell);
            ustat::BigInt terms = 0;
            for (const auto& c : ustat::count_star2_by_k(model.m, ell)) terms += c;
            j["term_count"] = terms.get_str();
        }
    }
    emit(j, out_path);
    return kExitOk;
}

int cmd_bound(const std::string& model_path, double gamma, double t, const std::string& tail_name,
              const std::string& method, double c43, const std::string& out_path) {
    const ustat::UStatModel model = ustat::model_from_json(load_json(model_path));
    const ustat::Tail tail = tail_name == "upper" ? ustat::Tail::upper
                             : tail_name == "lower" ? ustat::Tail::lower
                                                    : ustat::Tail::two_sided;
    ustat::BoundResult r;
    if (method == "main") {
        r = ustat::main_bound(model, gamma, t, tail);
    } else if (method == "unified") {
        r = ustat::unified_bound(model, gamma, t, tail);
    } else if (method == "largeorder") {
        const auto* a2 = std::get_if<ustat::A2Params>(&model.assumption);
        if (!a2) throw std::runtime_error("largeorder needs an A2 model");
        r = ustat::largeorder_upper(*a2, model.m, gamma, t, true);
    } else if (method == "wu") {
        const auto* a2 = std::get_if<ustat::A2Params>(&model.assumption);
        if (!a2 || model.m != 1) throw std::runtime_error("wu needs an order-1 A2 model");
        const auto wb = ustat::wu_order1(*a2, gamma, t, model.kernel_nonneg);
        json j{{"version", ustat::kVersion}, {"upper_tail", wb.upper_tail}};
        if (wb.lower_tail) j["lower_tail"] = *wb.lower_tail;
        emit(j, out_path);
        return kExitOk;
    } else if (method == "cc") {
        r = ustat::chebyshev_cantelli_a1(model, gamma, t, c43, 8.0 * model.m * model.a1().beta0);
    } else if (method == "clt") {
        r = ustat::clt_regime(model, gamma, t);  // t plays the role of s
    } else if (method == "bp") {
        r = ustat::lower_tail_bp(model, gamma, t);
    } else {
        throw std::runtime_error("unknown method '" + method + "'");
    }
    emit(bound_result_json(r), out_path);
    return r.preconditions_met ? kExitOk : kExitNotApplicable;
}

int cmd_preset(const std::string& app, double kappa, int d, double window_ball, double rho,
               double s, double tau, const std::string& h_name, int m, int i,
               const std::vector<double>& nu, double r, const std::string& out_path) {
    json j{{"version", ustat::kVersion}, {"app", app}};
    if (app == "subgraph" || app == "poweredge") {
        const ustat::SpaceSpec space{kappa, d};
        const ustat::WindowSpec window = ustat::WindowSpec::ball(space, window_ball);
        const ustat::PresetParams preset =
            app == "subgraph"
                ? ustat::subgraph_params(space, window, ustat::graph_from_name(h_name), rho, s)
                : ustat::power_edge_params(space, window, rho, tau, s);
        j["model"] = ustat::model_to_json(preset.model);
        j["preset"] = {{"beta1", preset.beta1},
                       {"beta2", preset.beta2},
                       {"c27_app", preset.c27_app},
                       {"gamma_threshold", preset.gamma_threshold}};
    } else if (app == "eucl-hyperplane") {
        const auto p = ustat::euclidean_hyperplane_params(d, m, i, nu);
        ustat::UStatModel model;
        model.m = m;
        model.assumption = ustat::A2Params{p.alpha1, p.alpha2_upper};
        model.kernel_nonneg = true;
        j["model"] = ustat::model_to_json(model);
        j["preset"] = {{"alpha1", p.alpha1},
                       {"alpha2_upper", p.alpha2_upper},
                       {"c27", p.c27},
                       {"gamma_threshold", 8.0 * m / p.alpha1}};
    } else if (app == "hyp-hyperplane") {
        const ustat::A1Params p = ustat::hyperbolic_f1_params(d, r);
        ustat::UStatModel model;
        model.m = 1;
        model.assumption = p;
        model.kernel_nonneg = true;
        j["model"] = ustat::model_to_json(model);
        j["preset"] = {{"beta1", p.beta1},
                       {"beta2", p.beta2},
                       {"q", p.q},
                       {"log_beta1", std::log(p.beta1)},
                       {"log_beta2", std::log(p.beta2)}};
    } else {
        throw std::runtime_error("unknown preset app '" + app + "'");
    }
    emit(j, out_path);
    return kExitOk;
}

int cmd_simulate(const std::string& scenario_path, long long replicate,
                 std::optional<uint64_t> seed_override, const std::string& out_path) {
    ustat::Scenario sc = ustat::scenario_from_json(load_json(scenario_path));
    if (seed_override) sc.seed = *seed_override;
    std::ostringstream os;
    switch (sc.kind) {
        case ustat::ScenarioKind::hyperbolic_f1: {
            const auto chords =
                ustat::sample_hyperbolic_chords(sc.hyp_d, sc.hyp_r, sc.gamma, sc.seed, replicate);
            os << "replicate,index,s,chord_volume\n";
            for (size_t idx = 0; idx < chords.distances.size(); ++idx)
                os << replicate << "," << idx << "," << chords.distances[idx] << ","
                   << ustat::chord_length(chords.d, chords.r, chords.distances[idx]) << "\n";
            break;
        }
        case ustat::ScenarioKind::poisson_count:
        case ustat::ScenarioKind::falling_factorial: {
            const auto values = ustat::simulate_values(sc, 1, ustat::Exec::serial);
            os << "replicate,value\n";
            for (size_t idx = 0; idx < values.size(); ++idx) os << idx << "," << values[idx] << "\n";
            break;
        }
        default: {
            const auto sample = ustat::sample_ppp_ball(sc.space, sc.window_radius, sc.gamma,
                                                       sc.seed, replicate);
            ustat::dump_csv(os, sample, static_cast<int>(replicate));
            break;
        }
    }
    if (out_path.empty())
        std::cout << os.str();
    else
        std::ofstream(out_path) << os.str();
    return kExitOk;
}

int cmd_verify(const std::string& scenario_path, std::optional<uint64_t> seed_override,
               const std::string& out_path, const std::string& csv_path, bool serial) {
    ustat::Scenario sc = ustat::scenario_from_json(load_json(scenario_path));
    if (seed_override) sc.seed = *seed_override;
    const auto run = ustat::run_simulation(sc, serial ? ustat::Exec::serial : ustat::Exec::parallel);
    const auto reports = ustat::verify_scenario(sc, run);
    const json payload = ustat::report_to_json(sc, run, reports);
    emit(payload, out_path);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        ustat::report_to_csv(csv, reports);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson U-statistic concentration toolkit"};
    app.set_version_flag("--version", ustat::kVersion);
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap harness parallelism (0 = all cores)");
    std::optional<uint64_t> seed;
    app.add_option("--seed", seed, "override the scenario seed");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "stream the subpartition classes");
    int m = 1, ell = 2;
    std::optional<int> k_filter;
    std::string format = "json", out_path;
    enumerate->add_option("--m", m, "row length")->required();
    enumerate->add_option("--ell", ell, "number of rows")->required();
    enumerate->add_option("--k", k_filter, "only subpartitions with this k");
    enumerate->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    enumerate->add_option("--out", out_path, "output path (default stdout)");

    // moments
    auto* moments = app.add_subcommand("moments", "centred moments, exact or bounded");
    std::string model_path;
    int ell_arg = 2;
    double gamma = 1.0;
    bool want_exact = false, want_bound = false;
    moments->add_option("--model", model_path, "model.json")->required();
    moments->add_option("--ell", ell_arg, "moment order")->required();
    moments->add_option("--gamma", gamma, "intensity")->required();
    moments->add_flag("--exact", want_exact, "exact moment (A2 models)");
    moments->add_flag("--bound", want_bound, "closed-form upper bound");
    moments->add_option("--out", out_path, "output path");

    // bound
    auto* bound = app.add_subcommand("bound", "evaluate a tail bound");
    double t_arg = 0.0, c43 = 4.0;
    std::string tail_name = "two", method = "main";
    bound->add_option("--model", model_path, "model.json")->required();
    bound->add_option("--gamma", gamma, "intensity")->required();
    bound->add_option("--t", t_arg, "deviation (or s for clt)")->required();
    bound->add_option("--tail", tail_name, "upper, lower or two")
        ->check(CLI::IsMember({"upper", "lower", "two"}));
    bound->add_option("--method", method, "main|unified|largeorder|wu|cc|clt|bp")
        ->check(CLI::IsMember({"main", "unified", "largeorder", "wu", "cc", "clt", "bp"}));
    bound->add_option("--c43", c43, "Chebyshev-Cantelli range constant");
    bound->add_option("--out", out_path, "output path");

    // preset
    auto* preset = app.add_subcommand("preset", "assumption parameters for the applications");
    std::string preset_app, h_name = "edge";
    double kappa = 0.0, window_ball = 1.0, rho = 0.1, s_mix = 0.0, tau = 0.0, r_hyp = 3.0;
    int d = 2, m_hp = 1, i_hp = 0;
    std::vector<double> nu;
    preset->add_option("--app", preset_app, "subgraph|poweredge|eucl-hyperplane|hyp-hyperplane")
        ->required()
        ->check(CLI::IsMember({"subgraph", "poweredge", "eucl-hyperplane", "hyp-hyperplane"}));
    preset->add_option("--kappa", kappa, "sectional curvature");
    preset->add_option("--d", d, "dimension");
    preset->add_option("--window-ball", window_ball, "ball-window radius");
    preset->add_option("--rho", rho, "connection radius");
    preset->add_option("--s", s_mix, "interpolation parameter in [0,1]");
    preset->add_option("--tau", tau, "edge-length power");
    preset->add_option("--H", h_name, "edge|path3|triangle|star3|cycle4");
    preset->add_option("--m", m_hp, "hyperplane intersection order");
    preset->add_option("--i", i_hp, "intrinsic volume index");
    preset->add_option("--nu", nu, "intrinsic volumes of the window, nu_0..nu_d");
    preset->add_option("--r", r_hyp, "hyperbolic window radius");
    preset->add_option("--out", out_path, "output path");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "dump one replicate as CSV");
    std::string scenario_path;
    long long replicate = 0;
    simulate->add_option("--scenario", scenario_path, "scenario.json")->required();
    simulate->add_option("--replicate", replicate, "replicate index");
    simulate->add_option("--out", out_path, "output path");

    // verify
    auto* verify = app.add_subcommand("verify", "run a scenario and check its bounds");
    std::string csv_path;
    bool serial = false;
    verify->add_option("--scenario", scenario_path, "scenario.json")->required();
    verify->add_option("--out", out_path, "report.json path (default stdout)");
    verify->add_option("--csv", csv_path, "also write a CSV of the lines");
    verify->add_flag("--serial", serial, "run replicates serially");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*enumerate) return cmd_enumerate(m, ell, k_filter, format, out_path);
        if (*moments) {
            if (want_exact == want_bound)
                throw std::runtime_error("pass exactly one of --exact / --bound");
            return cmd_moments(model_path, ell_arg, gamma, want_bound, out_path);
        }
        if (*bound) return cmd_bound(model_path, gamma, t_arg, tail_name, method, c43, out_path);
        if (*preset)
            return cmd_preset(preset_app, kappa, d, window_ball, rho, s_mix, tau, h_name, m_hp,
                              i_hp, nu, r_hyp, out_path);
        if (*simulate) return cmd_simulate(scenario_path, replicate, seed, out_path);
        if (*verify) return cmd_verify(scenario_path, seed, out_path, csv_path, serial);
    } catch (const ustat::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
