#include "ustat/applications.hpp"

#include <cmath>
#include <stdexcept>

#include "ustat/quadrature.hpp"

namespace ustat {

namespace {

double pi() { return M_PI; }

double sn_kappa(double kappa, double s) {
    if (kappa > 0.0) return std::sin(std::sqrt(kappa) * s) / std::sqrt(kappa);
    if (kappa < 0.0) return std::sinh(std::sqrt(-kappa) * s) / std::sqrt(-kappa);
    return s;
}

double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

void SpaceSpec::validate() const {
    if (d < 2) throw std::invalid_argument("space: need d >= 2");
}

WindowSpec WindowSpec::ball(const SpaceSpec& space, double r) {
    WindowSpec w;
    w.volume = ball_volume(space, r);
    w.inradius = r;
    w.is_ball = true;
    w.ball_radius = r;
    w.no_antipodal = space.kappa <= 0.0 || r < pi() / (2.0 * std::sqrt(space.kappa));
    return w;
}

void WindowSpec::validate(const SpaceSpec& space) const {
    if (volume <= 0.0 || inradius <= 0.0)
        throw std::invalid_argument("window: volume and inradius must be > 0");
    const double ball = ball_volume(space, inradius);
    if (volume < ball * (1.0 - 1e-9))
        throw std::invalid_argument("window: volume smaller than the inradius ball volume");
}

int graph_order(SmallGraph h) {
    switch (h) {
        case SmallGraph::edge: return 2;
        case SmallGraph::path3: return 3;
        case SmallGraph::triangle: return 3;
        case SmallGraph::star3: return 4;
        case SmallGraph::cycle4: return 4;
    }
    throw std::logic_error("graph_order: unknown graph");
}

int graph_diameter(SmallGraph h) {
    switch (h) {
        case SmallGraph::edge: return 1;
        case SmallGraph::path3: return 2;
        case SmallGraph::triangle: return 1;
        case SmallGraph::star3: return 2;
        case SmallGraph::cycle4: return 2;
    }
    throw std::logic_error("graph_diameter: unknown graph");
}

SmallGraph graph_from_name(const std::string& name) {
    if (name == "edge") return SmallGraph::edge;
    if (name == "path3" || name == "P3") return SmallGraph::path3;
    if (name == "triangle") return SmallGraph::triangle;
    if (name == "star3" || name == "S3") return SmallGraph::star3;
    if (name == "cycle4" || name == "C4") return SmallGraph::cycle4;
    throw std::invalid_argument("unsupported graph '" + name + "'");
}

std::string graph_name(SmallGraph h) {
    switch (h) {
        case SmallGraph::edge: return "edge";
        case SmallGraph::path3: return "path3";
        case SmallGraph::triangle: return "triangle";
        case SmallGraph::star3: return "star3";
        case SmallGraph::cycle4: return "cycle4";
    }
    throw std::logic_error("graph_name: unknown graph");
}

int GraphFunctionalSpec::m() const {
    switch (kind) {
        case Kind::included_subgraph: return graph_order(h);
        case Kind::power_edge:
        case Kind::edge_count: return 2;
    }
    throw std::logic_error("GraphFunctionalSpec::m");
}

int GraphFunctionalSpec::n() const {
    switch (kind) {
        case Kind::included_subgraph: return graph_diameter(h);
        case Kind::power_edge:
        case Kind::edge_count: return 1;
    }
    throw std::logic_error("GraphFunctionalSpec::n");
}

double unit_sphere_area(int j) {
    if (j < 1) throw std::invalid_argument("unit_sphere_area: need j >= 1");
    return 2.0 * std::pow(pi(), j / 2.0) / std::tgamma(j / 2.0);
}

double ball_volume(const SpaceSpec& space, double r) {
    space.validate();
    if (r < 0.0) throw std::invalid_argument("ball_volume: r must be >= 0");
    if (r == 0.0) return 0.0;
    const double kappa = space.kappa;
    const int d = space.d;
    if (kappa > 0.0 && r >= pi() / (2.0 * std::sqrt(kappa)))
        throw std::domain_error("ball_volume: radius out of range for kappa > 0");
    const double omega = unit_sphere_area(d);
    if (kappa == 0.0) return omega * std::pow(r, d) / d;
    const double a = std::sqrt(std::abs(kappa));
    const double x = a * r;
    double integral;  // of sn_kappa(s)^{d-1} over [0, r]
    if (kappa < 0.0) {
        switch (d) {
            case 2: integral = (std::cosh(x) - 1.0) / (a * a); break;
            case 3: integral = (std::sinh(x) * std::cosh(x) - x) / (2.0 * a * a * a); break;
            case 4: {
                const double c = std::cosh(x);
                integral = (c * c * c / 3.0 - c + 2.0 / 3.0) / (a * a * a * a);
                break;
            }
            default:
                integral = integrate([&](double s) { return std::pow(sn_kappa(kappa, s), d - 1); },
                                     0.0, r);
        }
    } else {
        switch (d) {
            case 2: integral = (1.0 - std::cos(x)) / (a * a); break;
            case 3: integral = (x - std::sin(x) * std::cos(x)) / (2.0 * a * a * a); break;
            case 4: {
                const double c = std::cos(x);
                integral = (2.0 / 3.0 - c + c * c * c / 3.0) / (a * a * a * a);
                break;
            }
            default:
                integral = integrate([&](double s) { return std::pow(sn_kappa(kappa, s), d - 1); },
                                     0.0, r);
        }
    }
    return omega * integral;
}

PresetParams subgraph_params(const SpaceSpec& space, const WindowSpec& window, SmallGraph h,
                             double rho, double s) {
    space.validate();
    window.validate(space);
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("subgraph_params: s must lie in [0,1]");
    const int m = graph_order(h);
    const int n = graph_diameter(h);
    if (rho <= 0.0 || rho * n > window.inradius * (1.0 + 1e-12))
        throw std::domain_error("subgraph_params: need 0 < rho <= r(W)/n");
    if (space.kappa > 0.0 && !window.no_antipodal)
        throw std::domain_error("subgraph_params: kappa > 0 needs the no-antipodal flag");

    const double vol_w = window.volume;
    const double vol_nrho = ball_volume(space, n * rho);
    const double vol_half_rho = ball_volume(space, rho / 2.0);
    const double vol_half_rw = ball_volume(space, window.inradius / 2.0);

    PresetParams out;
    out.beta1 = std::pow(vol_nrho, 1.0 - s / m) * std::pow(vol_w, s / m);
    out.beta2 = std::pow(vol_w / vol_nrho, (1.0 - s) / 2.0);
    out.c27_app = std::pow(2.0, -17.0 * m - 4.0) * std::pow(double(m), -2.0 * m - 1.0) /
                  std::pow(factorial_d(m), 2) * std::pow(vol_half_rho / vol_nrho, 2 * m - 2) *
                  std::pow(vol_nrho / vol_w, s * (1.0 - 1.0 / m)) * (vol_half_rw / vol_w);
    out.gamma_threshold = 8.0 * m / out.beta1;

    out.model.m = m;
    out.model.assumption = A1Params{1.0, out.beta1, out.beta2, 0.0};
    out.model.kernel_nonneg = true;
    // certified lower bound C_3 / ((m-1)!)^2 <= ||f_1||^2
    out.model.f1_norm_sq = std::pow(vol_half_rho, 2 * m - 2) * vol_half_rw /
                           std::pow(factorial_d(m - 1), 2);
    out.model.validate();
    return out;
}

PresetParams power_edge_params(const SpaceSpec& space, const WindowSpec& window, double rho,
                               double tau, double s) {
    space.validate();
    window.validate(space);
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("power_edge_params: s must lie in [0,1]");
    if (tau < 0.0) throw std::invalid_argument("power_edge_params: tau must be >= 0");
    if (rho <= 0.0 || rho > window.inradius * (1.0 + 1e-12))
        throw std::domain_error("power_edge_params: need 0 < rho <= r(W)");
    if (space.kappa > 0.0 && !window.no_antipodal)
        throw std::domain_error("power_edge_params: kappa > 0 needs the no-antipodal flag");

    const double vol_w = window.volume;
    const double vol_rho = ball_volume(space, rho);
    const double vol_half_rho = ball_volume(space, rho / 2.0);
    const double vol_rw = ball_volume(space, window.inradius);

    PresetParams out;
    out.beta1 = std::pow(vol_w, s / 2.0) * std::pow(vol_rho, 1.0 - s / 2.0);
    out.beta2 = 0.5 * std::pow(rho, tau) * std::pow(vol_w / vol_rho, (1.0 - s) / 2.0);
    out.c27_app = std::pow(2.0, -47.0 - 2.0 * tau) * std::pow(vol_half_rho / vol_rho, 2) *
                  std::pow(vol_rho / vol_w, s / 2.0) * (vol_rw / vol_w);
    out.gamma_threshold = 16.0 / out.beta1;

    out.model.m = 2;
    out.model.assumption = A1Params{1.0, out.beta1, out.beta2, 0.0};
    out.model.kernel_nonneg = true;
    out.model.f1_norm_sq = std::pow(2.0, -4.0 - 2.0 * tau) * std::pow(rho, 2.0 * tau) *
                           vol_half_rho * vol_half_rho * vol_rw;
    out.model.validate();
    return out;
}

double fixed_degree_radius(const SpaceSpec& space, double delta, double gamma, double r_window) {
    space.validate();
    if (delta < 16.0) throw std::invalid_argument("fixed_degree_radius: needs delta >= 16");
    if (gamma <= 0.0) throw std::invalid_argument("fixed_degree_radius: gamma must be > 0");
    double hi = r_window;
    if (space.kappa != 0.0) hi = std::min(hi, 1.0 / std::sqrt(std::abs(space.kappa)));
    if (space.kappa > 0.0) hi = std::min(hi, pi() / (2.0 * std::sqrt(space.kappa)) * (1.0 - 1e-9));
    if (!std::isfinite(hi)) {
        hi = 1.0;
        while (gamma * ball_volume(space, hi) < delta && hi < 1e12) hi *= 2.0;
    }
    auto resid = [&](double rho) { return gamma * ball_volume(space, rho) - delta; };
    if (resid(hi) < 0.0)
        throw std::domain_error("fixed_degree_radius: no root in the admissible bracket");
    double lo = 0.0;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        (resid(mid) >= 0.0 ? hi : lo) = mid;
        if (hi - lo <= 1e-12 * hi) break;
    }
    return hi;
}

EuclHyperplaneParams euclidean_hyperplane_params(int d, int m, int i, std::span<const double> nu) {
    if (d < 1 || m < 1 || m > d) throw std::invalid_argument("euclidean_hyperplane_params: need 1 <= m <= d");
    if (i < 0 || i > d - m) throw std::invalid_argument("euclidean_hyperplane_params: need 0 <= i <= d-m");
    if (static_cast<int>(nu.size()) < d + 1)
        throw std::invalid_argument("euclidean_hyperplane_params: need nu[0..d]");
    for (double v : nu)
        if (v < 0.0) throw std::invalid_argument("euclidean_hyperplane_params: nu entries must be >= 0");
    if (nu[1] <= 0.0) throw std::invalid_argument("euclidean_hyperplane_params: nu_1 must be > 0");

    EuclHyperplaneParams out;
    out.alpha1 = unit_sphere_area(d + 1) / (pi() * unit_sphere_area(d)) * nu[1];
    out.alpha2_upper = nu[i] / factorial_d(m);
    const double ratio = m * unit_sphere_area(i + 1) * nu[i + m] /
                         (out.alpha2_upper * unit_sphere_area(i + m + 1) *
                          std::pow(pi() * nu[1], m));
    out.c27 = std::pow(2.0, -17.0 * m - 4.0) * std::pow(double(m), -2.0 * m - 3.0) *
              std::min(1.0, ratio * ratio);
    return out;
}

A1Params hyperbolic_f1_params(int d, double r) {
    if (d < 2) throw std::invalid_argument("hyperbolic_f1_params: need d >= 2");
    if (r <= 0.0) throw std::invalid_argument("hyperbolic_f1_params: need r > 0");
    A1Params p;
    p.beta0 = 1.0;
    if (d == 2) {
        p.q = 1.0;
        p.beta1 = 2.0 * std::exp(r);
        p.beta2 = 4.0;
    } else if (d == 3) {
        p.q = 0.0;
        p.beta1 = 2.0 * r;
        p.beta2 = unit_sphere_area(2) * std::exp(r);
    } else {
        p.q = 0.0;
        p.beta1 = 2.0;
        p.beta2 = unit_sphere_area(d - 1) / (d - 2) * std::exp(r * (d - 2));
    }
    return p;
}

BoundResult hyperbolic_rate(int d, double r, double gamma, double t, HypMethod method) {
    if (d < 2 || r <= 0.0 || gamma <= 0.0 || t < 0.0)
        throw std::invalid_argument("hyperbolic_rate: bad arguments");
    BoundResult res;
    if (method == HypMethod::wu) {
        double rate;
        if (d == 2) {
            rate = t / (4.0 * r) * std::log1p(t * r / (32.0 * gamma * std::exp(r)));
        } else if (d == 3) {
            const double w2 = unit_sphere_area(2);
            rate = t / (w2 * std::exp(r)) * std::log1p(t / (4.0 * gamma * w2 * r * std::exp(r)));
        } else {
            const double wd = unit_sphere_area(d - 1);
            const double e_r = std::exp((d - 2) * r);
            rate = std::pow(2.0, d - 3) * (d - 2) * t / (wd * e_r) *
                   std::log1p((d - 2) * t / (std::pow(2.0, d - 1) * gamma * wd * e_r));
        }
        res.regime = Regime::poisson_log_c;
        res.rate = rate;
        res.prob_bound = std::min(1.0, std::exp(-rate));  // one-sided upper tail
        res.preconditions_met = true;
        return res;
    }
    // moment route
    if (d == 2) {
        if (gamma < 4.0 * std::exp(-r)) {
            res.reason = "hyperbolic_rate: d=2 moment route needs gamma >= 4e^{-r}";
            return res;
        }
        const double rate = t / std::pow(2.0, 31) * std::min(t / (8.0 * std::exp(r) * gamma), 1.0);
        res.regime = Regime::unified_d;
        res.rate = rate;
        res.prob_bound = std::min(1.0, 2.0 * std::exp(-rate));
        res.preconditions_met = true;
        return res;
    }
    const double beta1 = (d == 3) ? 2.0 * r : 2.0;
    if (gamma < 8.0 / beta1) {
        res.reason = "hyperbolic_rate: moment route needs gamma >= 8/beta1";
        return res;
    }
    const double wd = unit_sphere_area(d - 1);
    const double beta_p = wd / (d - 2) * ((d == 3) ? r * std::exp(r) : std::exp(r * (d - 2)));
    const double u = t / (beta_p * gamma);
    const double rate = std::pow(2.0, -4.0 * d - 22.0) / wd * t / std::exp(r * (d - 2)) *
                        std::min(u, 1.0 + std::max(0.0, std::log(u)));
    res.regime = Regime::unified_d;
    res.rate = rate;
    res.prob_bound = std::min(1.0, 2.0 * std::exp(-rate));
    res.preconditions_met = true;
    return res;
}

std::pair<double, double> hyperbolic_variance_window(int d, double r, double gamma) {
    if (d < 2) throw std::invalid_argument("hyperbolic_variance_window: need d >= 2");
    if (r < 3.0 || gamma < 1.0)
        throw std::domain_error("hyperbolic_variance_window: needs r >= 3 and gamma >= 1");
    if (d == 2) {
        const double base = gamma * std::exp(r);
        return {base, 64.0 * base};
    }
    if (d == 3) {
        const double w2 = unit_sphere_area(2);
        const double base = w2 * w2 * gamma * r * std::exp(2.0 * r);
        return {base / 64.0, 2.0 * base};
    }
    const double wd = unit_sphere_area(d - 1);
    const double e2r = std::exp(2.0 * r * (d - 2));
    const double lower = std::pow(2.0, -4.0 * d + 6.0) * wd * wd / std::pow(double(d - 2), 3) *
                         gamma * e2r;
    const double upper = 2.0 * wd * wd / std::pow(double(d - 2), 2) * gamma * e2r;
    return {lower, upper};
}

ChordMomentBounds hyperbolic_chord_moment_bounds(int d, int k, double r) {
    if (d < 2 || k < 2 || r <= 0.0)
        throw std::invalid_argument("hyperbolic_chord_moment_bounds: need d >= 2, k >= 2, r > 0");
    ChordMomentBounds out;
    if (d == 2) {
        out.upper = 2.0 * std::pow(4.0, k) * factorial_d(k) * std::exp(r);
    } else if (d == 3 && k == 2) {
        const double w2 = unit_sphere_area(2);
        out.upper = 2.0 * w2 * w2 * r * std::exp(2.0 * r);
    } else {
        const double wd = unit_sphere_area(d - 1);
        out.upper = 2.0 * std::pow(wd / (d - 2), k) * std::exp(r * k * (d - 2));
    }
    if (k == 2 && r >= 3.0) {
        if (d == 2) {
            out.lower = std::exp(r);
        } else if (d == 3) {
            const double w2 = unit_sphere_area(2);
            out.lower = w2 * w2 / 64.0 * r * std::exp(2.0 * r);
        } else {
            const double wd = unit_sphere_area(d - 1);
            out.lower = std::pow(2.0, -4.0 * d + 6.0) * wd * wd / std::pow(double(d - 2), 3) *
                        std::exp(2.0 * r * (d - 2));
        }
    }
    return out;
}

}  // namespace ustat
