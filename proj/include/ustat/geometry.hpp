#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ustat/applications.hpp"
#include "ustat/rng.hpp"

namespace ustat {

enum class Exec { serial, parallel };

// Points in a ball window. Coordinates are stored flat: embedding dimension
// is d for kappa = 0 and d+1 (hyperboloid / sphere model) otherwise.
struct PointSample {
    SpaceSpec space;
    double window_radius = 0.0;
    uint64_t seed = 0;
    int embed_dim = 0;
    std::vector<double> coords;

    int size() const { return embed_dim == 0 ? 0 : static_cast<int>(coords.size()) / embed_dim; }
    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<size_t>(i) * embed_dim,
                static_cast<size_t>(embed_dim)};
    }
};

double dist(const SpaceSpec& space, std::span<const double> x, std::span<const double> y);

// Monotone inverse-CDF sampler over [lo, hi] for an unnormalised density;
// cached 1024-knot cumulative table, bisection refinement to 1e-12.
class InverseCdfSampler {
  public:
    InverseCdfSampler(std::function<double(double)> density, double lo, double hi);

    double sample(double u) const;  // u in [0,1)
    double total_mass() const { return total_; }

  private:
    double segment_integral(double a, double b) const;

    std::function<double(double)> density_;
    double lo_, hi_;
    std::vector<double> cum_;  // cumulative integral at knots
    double total_ = 0.0;
};

// Reusable sampler for a Poisson process on a ball window: N ~ Poisson(gamma *
// volume), radii with density sn_kappa^{d-1}, uniform directions. Every
// replicate is a pure function of (seed, stream).
class BallSampler {
  public:
    BallSampler(const SpaceSpec& space, double r);

    PointSample sample(double gamma, uint64_t seed, uint64_t stream = 0) const;
    double window_volume() const { return volume_; }

  private:
    double sample_radius(Rng& rng) const;

    SpaceSpec space_;
    double r_;
    double volume_;
    std::optional<InverseCdfSampler> radial_;  // only when no closed form applies
};

PointSample sample_ppp_ball(const SpaceSpec& space, double r, double gamma, uint64_t seed,
                            uint64_t stream = 0);

// Gilbert-graph functionals. The kappa = 0 path uses a cell grid; results are
// identical to the brute-force reference (kept for testing).
long long edge_count(const PointSample& sample, double rho, Exec exec = Exec::parallel);
long long edge_count_bruteforce(const PointSample& sample, double rho);
double power_edge_length(const PointSample& sample, double rho, double tau,
                         Exec exec = Exec::parallel);
double power_edge_length_bruteforce(const PointSample& sample, double rho, double tau);

// Included subgraph count of one of the shipped graphs: brute force over
// m-subsets with pairwise distances <= n*rho, exact per-subset copy counting.
long long included_subgraph_count(const PointSample& sample, double rho, SmallGraph h);

// Hyperbolic chords: H^{d-1}(L(s) cap B_r) as a function of the distance s of
// the hyperplane from the origin.
double chord_length(int d, double r, double s);

// Total measure of hyperplanes hitting B_r: 2 * int_0^r cosh^{d-1}(s) ds.
double hyperplane_hit_mass(int d, double r);

struct ChordSample {
    int d = 2;
    double r = 0.0;
    uint64_t seed = 0;
    std::vector<double> distances;  // s values in [0, r]
};

class ChordSampler {
  public:
    ChordSampler(int d, double r);

    ChordSample sample(double gamma, uint64_t seed, uint64_t stream = 0) const;
    double hit_mass() const { return mass_; }

  private:
    int d_;
    double r_;
    double mass_;
    std::optional<InverseCdfSampler> radial_;
};

ChordSample sample_hyperbolic_chords(int d, double r, double gamma, uint64_t seed,
                                     uint64_t stream = 0);

// Total surface content of the chords: distributed as F_1^h(r, gamma).
double f1_hyperbolic(const ChordSample& chords);

void dump_csv(std::ostream& os, const PointSample& sample, int replicate, bool header = true);

}  // namespace ustat
