#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>

#include "ustat/bounds.hpp"
#include "ustat/model.hpp"

namespace ustat {

// Simply connected space of constant sectional curvature kappa, dimension d.
struct SpaceSpec {
    double kappa = 0.0;
    int d = 2;

    void validate() const;
};

struct WindowSpec {
    double volume = 0.0;    // H^d_kappa(W)
    double inradius = 0.0;  // r(W)
    bool is_ball = false;
    double ball_radius = 0.0;
    bool no_antipodal = false;  // caller-asserted for kappa > 0

    static WindowSpec ball(const SpaceSpec& space, double r);
    void validate(const SpaceSpec& space) const;
};

enum class SmallGraph { edge, path3, triangle, star3, cycle4 };

int graph_order(SmallGraph h);     // number of vertices m
int graph_diameter(SmallGraph h);  // combinatorial diameter n
SmallGraph graph_from_name(const std::string& name);
std::string graph_name(SmallGraph h);

struct GraphFunctionalSpec {
    enum class Kind { included_subgraph, power_edge, edge_count } kind = Kind::edge_count;
    SmallGraph h = SmallGraph::edge;
    double tau = 0.0;

    int m() const;
    int n() const;
};

// omega_j = 2 pi^{j/2} / Gamma(j/2), surface area of S^{j-1}.
double unit_sphere_area(int j);

// H^d_kappa(B_r) = omega_d \int_0^r sn_kappa(s)^{d-1} ds. Closed form for
// d <= 4, adaptive quadrature above.
double ball_volume(const SpaceSpec& space, double r);

// Assumption parameters plus the specialised unified-bound constant for a
// geometric preset. The embedded model carries (beta1, beta2, q=0, beta0=1)
// and the certified lower bound for ||f_1||^2, so main_constants(model).c27
// reproduces c27_app.
struct PresetParams {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double c27_app = 0.0;
    double gamma_threshold = 0.0;
    UStatModel model;
};

PresetParams subgraph_params(const SpaceSpec& space, const WindowSpec& window, SmallGraph h,
                             double rho, double s);

PresetParams power_edge_params(const SpaceSpec& space, const WindowSpec& window, double rho,
                               double tau, double s);

// Radius with gamma * ball_volume(kappa, d, rho) = delta, by bracketed
// bisection to 1e-12 relative tolerance.
double fixed_degree_radius(const SpaceSpec& space, double delta, double gamma,
                           double r_window = std::numeric_limits<double>::infinity());

struct EuclHyperplaneParams {
    double alpha1 = 0.0;
    double alpha2_upper = 0.0;
    double c27 = 0.0;
};

// Constants for the intrinsic-volume functional of the Euclidean hyperplane
// process; nu[i] = V_i(W) for i = 0..d.
EuclHyperplaneParams euclidean_hyperplane_params(int d, int m, int i, std::span<const double> nu);

// (A1) parameters of the hyperbolic surface functional F_1^h(r, gamma).
A1Params hyperbolic_f1_params(int d, double r);

enum class HypMethod { wu, a1 };

// Tail rate for F_1^h: the order-1 log-Sobolev route (one-sided upper tail)
// or the moment route (two-sided).
BoundResult hyperbolic_rate(int d, double r, double gamma, double t, HypMethod method);

// Variance bracket of F_1^h for r >= 3, gamma >= 1.
std::pair<double, double> hyperbolic_variance_window(int d, double r, double gamma);

struct ChordMomentBounds {
    double upper = 0.0;                 // k >= 2
    std::optional<double> lower;        // k = 2 and r >= 3 only
};

// Bounds for \int H^{d-1}(H cap B_r)^k mu(dH) = 2 \int_0^r cosh^{d-1}(s) chord(s)^k ds.
ChordMomentBounds hyperbolic_chord_moment_bounds(int d, int k, double r);

}  // namespace ustat
