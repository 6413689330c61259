#include "ustat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ustat/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustat {

namespace {

double dot(std::span<const double> x, std::span<const double> y, size_t from = 0) {
    double s = 0.0;
    for (size_t i = from; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// int_0^X sinh^p(x) dx
double sinh_power_integral(int p, double X) {
    switch (p) {
        case 0: return X;
        case 1: return std::cosh(X) - 1.0;
        case 2: return (std::sinh(X) * std::cosh(X) - X) / 2.0;
        case 3: {
            const double c = std::cosh(X);
            return c * c * c / 3.0 - c + 2.0 / 3.0;
        }
        default:
            return integrate([p](double x) { return std::pow(std::sinh(x), p); }, 0.0, X);
    }
}

// int_0^r cosh^p(s) ds
double cosh_power_integral(int p, double r) {
    switch (p) {
        case 0: return r;
        case 1: return std::sinh(r);
        case 2: return (std::sinh(r) * std::cosh(r) + r) / 2.0;
        case 3: {
            const double s = std::sinh(r);
            return s + s * s * s / 3.0;
        }
        default:
            return integrate([p](double s) { return std::pow(std::cosh(s), p); }, 0.0, r);
    }
}

void unit_direction(Rng& rng, std::span<double> dir) {
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& c : dir) {
            c = rng.normal();
            norm2 += c * c;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : dir) c *= inv;
}

}  // namespace

double dist(const SpaceSpec& space, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dist: dimension mismatch");
    if (space.kappa == 0.0) {
        double s = 0.0;
        for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
        return std::sqrt(s);
    }
    const double scale = 1.0 / std::sqrt(std::abs(space.kappa));
    if (space.kappa < 0.0) {
        if (static_cast<int>(x.size()) != space.d + 1)
            throw std::invalid_argument("dist: hyperboloid points need d+1 coordinates");
        const double minkowski = x[0] * y[0] - dot(x, y, 1);
        return scale * std::acosh(std::max(1.0, minkowski));
    }
    const double cosv = std::clamp(dot(x, y), -1.0, 1.0);
    return scale * std::acos(cosv);
}

InverseCdfSampler::InverseCdfSampler(std::function<double(double)> density, double lo, double hi)
    : density_(std::move(density)), lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw std::invalid_argument("InverseCdfSampler: empty support");
    constexpr int kKnots = 1024;
    cum_.resize(kKnots + 1);
    cum_[0] = 0.0;
    const double h = (hi_ - lo_) / kKnots;
    for (int i = 0; i < kKnots; ++i)
        cum_[i + 1] = cum_[i] + segment_integral(lo_ + i * h, lo_ + (i + 1) * h);
    total_ = cum_.back();
    if (!(total_ > 0.0)) throw std::invalid_argument("InverseCdfSampler: zero total mass");
}

double InverseCdfSampler::segment_integral(double a, double b) const {
    // fixed composite Simpson, deterministic
    constexpr int kIntervals = 16;  // even
    const double h = (b - a) / kIntervals;
    double s = density_(a) + density_(b);
    for (int i = 1; i < kIntervals; ++i) s += density_(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double InverseCdfSampler::sample(double u) const {
    const double target = u * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    size_t seg = std::min(cum_.size() - 2, static_cast<size_t>(std::max<ptrdiff_t>(
                                               0, std::distance(cum_.begin(), it) - 1)));
    const double h = (hi_ - lo_) / (cum_.size() - 1);
    double a = lo_ + seg * h, b = a + h;
    double base = cum_[seg];
    // monotone bisection within the segment
    const double tol = 1e-12 * (hi_ - lo_);
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double cmid = base + segment_integral(lo_ + seg * h, mid);
        if (cmid < target)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

BallSampler::BallSampler(const SpaceSpec& space, double r) : space_(space), r_(r) {
    space.validate();
    if (r <= 0.0) throw std::invalid_argument("BallSampler: r must be > 0");
    if (space.kappa > 0.0 && r >= M_PI / (2.0 * std::sqrt(space.kappa)))
        throw std::domain_error("BallSampler: radius out of range for kappa > 0");
    volume_ = ball_volume(space, r);
    const bool closed_form =
        space.kappa == 0.0 || (space.kappa < 0.0 && space.d == 2);
    if (!closed_form) {
        const double kappa = space.kappa;
        const int d = space.d;
        radial_.emplace(
            [kappa, d](double s) {
                const double a = std::sqrt(std::abs(kappa));
                const double sn = kappa < 0.0 ? std::sinh(a * s) / a : std::sin(a * s) / a;
                return std::pow(sn, d - 1);
            },
            0.0, r);
    }
}

double BallSampler::sample_radius(Rng& rng) const {
    const double u = rng.uniform();
    if (space_.kappa == 0.0) return r_ * std::pow(u, 1.0 / space_.d);
    if (space_.kappa < 0.0 && space_.d == 2) {
        const double a = std::sqrt(-space_.kappa);
        return std::acosh(1.0 + u * (std::cosh(a * r_) - 1.0)) / a;
    }
    return radial_->sample(u);
}

PointSample BallSampler::sample(double gamma, uint64_t seed, uint64_t stream) const {
    if (gamma < 0.0) throw std::invalid_argument("BallSampler: gamma must be >= 0");
    Rng rng(seed, stream);
    const long long n = gamma == 0.0 ? 0 : rng.poisson(gamma * volume_);
    PointSample out;
    out.space = space_;
    out.window_radius = r_;
    out.seed = seed;
    out.embed_dim = space_.kappa == 0.0 ? space_.d : space_.d + 1;
    out.coords.resize(static_cast<size_t>(n) * out.embed_dim);
    std::vector<double> dir(space_.d);
    for (long long i = 0; i < n; ++i) {
        const double s = sample_radius(rng);
        unit_direction(rng, dir);
        double* p = out.coords.data() + static_cast<size_t>(i) * out.embed_dim;
        if (space_.kappa == 0.0) {
            for (int c = 0; c < space_.d; ++c) p[c] = s * dir[c];
        } else {
            const double a = std::sqrt(std::abs(space_.kappa));
            const double u = a * s;
            if (space_.kappa < 0.0) {
                p[0] = std::cosh(u);
                for (int c = 0; c < space_.d; ++c) p[c + 1] = std::sinh(u) * dir[c];
            } else {
                p[0] = std::cos(u);
                for (int c = 0; c < space_.d; ++c) p[c + 1] = std::sin(u) * dir[c];
            }
        }
    }
    return out;
}

PointSample sample_ppp_ball(const SpaceSpec& space, double r, double gamma, uint64_t seed,
                            uint64_t stream) {
    return BallSampler(space, r).sample(gamma, seed, stream);
}

namespace {

// cell grid over the kappa = 0 window; cell edge rho
struct CellGrid {
    double rho;
    int d;
    std::map<std::vector<int>, std::vector<int>> cells;

    CellGrid(const PointSample& sample, double rho_) : rho(rho_), d(sample.space.d) {
        std::vector<int> key(d);
        for (int i = 0; i < sample.size(); ++i) {
            const auto p = sample.point(i);
            for (int c = 0; c < d; ++c) key[c] = static_cast<int>(std::floor(p[c] / rho));
            cells[key].push_back(i);
        }
    }

    template <typename Fn>
    void for_neighbors(const PointSample& sample, int i, Fn&& fn) const {
        const auto p = sample.point(i);
        std::vector<int> base(d), key(d);
        for (int c = 0; c < d; ++c) base[c] = static_cast<int>(std::floor(p[c] / rho));
        const int combos = 1;
        int total = 1;
        for (int c = 0; c < d; ++c) total *= 3;
        for (int mask = 0; mask < total; ++mask) {
            int rest = mask;
            for (int c = 0; c < d; ++c) {
                key[c] = base[c] + (rest % 3) - 1;
                rest /= 3;
            }
            const auto it = cells.find(key);
            if (it == cells.end()) continue;
            for (int j : it->second) fn(j);
        }
        (void)combos;
    }
};

template <typename PairFn>
void scan_pairs(const PointSample& sample, double reach, Exec exec, PairFn&& fn,
                std::vector<double>* per_point_sums) {
    const int n = sample.size();
    per_point_sums->assign(n, 0.0);
    auto body_brute = [&](int i) {
        double acc = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double dij = dist(sample.space, sample.point(i), sample.point(j));
            if (dij <= reach) acc += fn(dij);
        }
        (*per_point_sums)[i] = acc;
    };
    if (sample.space.kappa == 0.0) {
        CellGrid grid(sample, reach);
        auto body = [&](int i) {
            // neighbours sorted so the accumulation order matches brute force
            std::vector<int> js;
            grid.for_neighbors(sample, i, [&](int j) {
                if (j > i) js.push_back(j);
            });
            std::sort(js.begin(), js.end());
            double acc = 0.0;
            for (int j : js) {
                const double dij = dist(sample.space, sample.point(i), sample.point(j));
                if (dij <= reach) acc += fn(dij);
            }
            (*per_point_sums)[i] = acc;
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
            for (int i = 0; i < n; ++i) body(i);
        } else {
            for (int i = 0; i < n; ++i) body(i);
        }
        return;
    }
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int i = 0; i < n; ++i) body_brute(i);
    } else {
        for (int i = 0; i < n; ++i) body_brute(i);
    }
}

}  // namespace

long long edge_count(const PointSample& sample, double rho, Exec exec) {
    std::vector<double> partial;
    scan_pairs(sample, rho, exec, [](double) { return 1.0; }, &partial);
    long long total = 0;
    for (double v : partial) total += static_cast<long long>(v + 0.5);
    return total;
}

long long edge_count_bruteforce(const PointSample& sample, double rho) {
    long long total = 0;
    const int n = sample.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(sample.space, sample.point(i), sample.point(j)) <= rho) ++total;
    return total;
}

double power_edge_length(const PointSample& sample, double rho, double tau, Exec exec) {
    std::vector<double> partial;
    scan_pairs(sample, rho, exec, [tau](double d) { return std::pow(d, tau); }, &partial);
    // deterministic serial reduction regardless of thread count
    double sum = 0.0;
    for (double v : partial) sum += v;
    return sum;
}

double power_edge_length_bruteforce(const PointSample& sample, double rho, double tau) {
    // row-partial accumulation, so the result is bit-identical to the
    // accelerated path on the same pair set
    double sum = 0.0;
    const int n = sample.size();
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double dij = dist(sample.space, sample.point(i), sample.point(j));
            if (dij <= rho) row += std::pow(dij, tau);
        }
        sum += row;
    }
    return sum;
}

namespace {

// copies of H as a subgraph of the graph on `idx` with threshold rho
int count_copies(const PointSample& sample, std::span<const int> idx, double rho, SmallGraph h) {
    const int m = static_cast<int>(idx.size());
    bool adj[4][4] = {};
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const double dab = dist(sample.space, sample.point(idx[a]), sample.point(idx[b]));
            adj[a][b] = adj[b][a] = (dab > 0.0 && dab <= rho);
        }
    switch (h) {
        case SmallGraph::edge:
            return adj[0][1] ? 1 : 0;
        case SmallGraph::triangle:
            return (adj[0][1] && adj[0][2] && adj[1][2]) ? 1 : 0;
        case SmallGraph::path3: {
            int copies = 0;
            for (int c = 0; c < 3; ++c) {
                const int u = (c + 1) % 3, v = (c + 2) % 3;
                if (adj[c][u] && adj[c][v]) ++copies;
            }
            return copies;
        }
        case SmallGraph::star3: {
            int copies = 0;
            for (int c = 0; c < 4; ++c) {
                bool all = true;
                for (int o = 0; o < 4; ++o)
                    if (o != c && !adj[c][o]) all = false;
                if (all) ++copies;
            }
            return copies;
        }
        case SmallGraph::cycle4: {
            static const int cycles[3][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
            int copies = 0;
            for (const auto& cyc : cycles) {
                bool ok = true;
                for (int e = 0; e < 4; ++e)
                    if (!adj[cyc[e]][cyc[(e + 1) % 4]]) ok = false;
                if (ok) ++copies;
            }
            return copies;
        }
    }
    return 0;
}

}  // namespace

long long included_subgraph_count(const PointSample& sample, double rho, SmallGraph h) {
    const int m = graph_order(h);
    const int n_diam = graph_diameter(h);
    const double reach = n_diam * rho;
    const int n = sample.size();
    if (n < m) return 0;

    // candidate neighbours within reach of each anchor (anchor = smallest index)
    long long total = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
    for (int i = 0; i < n; ++i) {
        std::vector<int> cand;
        for (int j = i + 1; j < n; ++j)
            if (dist(sample.space, sample.point(i), sample.point(j)) <= reach) cand.push_back(j);
        const int c = static_cast<int>(cand.size());
        if (c < m - 1) continue;
        std::vector<int> pick(m);
        pick[0] = i;
        std::vector<int> sel(m - 1);
        // iterate over (m-1)-combinations of cand
        for (int a = 0; a < m - 1; ++a) sel[a] = a;
        for (;;) {
            bool within = true;
            for (int a = 0; a < m - 1 && within; ++a) {
                pick[a + 1] = cand[sel[a]];
                for (int b = a + 1; b < m - 1 && within; ++b)
                    if (dist(sample.space, sample.point(cand[sel[a]]),
                             sample.point(cand[sel[b]])) > reach)
                        within = false;
            }
            if (within) total += count_copies(sample, pick, rho, h);
            // next combination
            int pos = m - 2;
            while (pos >= 0 && sel[pos] == c - (m - 1 - pos)) --pos;
            if (pos < 0) break;
            ++sel[pos];
            for (int a = pos + 1; a < m - 1; ++a) sel[a] = sel[a - 1] + 1;
        }
    }
    return total;
}

double chord_length(int d, double r, double s) {
    if (d < 2 || r < 0.0) throw std::invalid_argument("chord_length: bad arguments");
    if (s < 0.0 || s > r) throw std::domain_error("chord_length: s must lie in [0, r]");
    const double x = std::acosh(std::max(1.0, std::cosh(r) / std::cosh(s)));
    return unit_sphere_area(d - 1) * sinh_power_integral(d - 2, x);
}

double hyperplane_hit_mass(int d, double r) {
    if (d < 2 || r <= 0.0) throw std::invalid_argument("hyperplane_hit_mass: bad arguments");
    return 2.0 * cosh_power_integral(d - 1, r);
}

ChordSampler::ChordSampler(int d, double r) : d_(d), r_(r) {
    if (d < 2 || r <= 0.0) throw std::invalid_argument("ChordSampler: bad arguments");
    mass_ = hyperplane_hit_mass(d, r);
    if (d > 2)
        radial_.emplace([d](double s) { return std::pow(std::cosh(s), d - 1); }, 0.0, r);
}

ChordSample ChordSampler::sample(double gamma, uint64_t seed, uint64_t stream) const {
    Rng rng(seed, stream);
    const long long n = gamma == 0.0 ? 0 : rng.poisson(gamma * mass_);
    ChordSample out;
    out.d = d_;
    out.r = r_;
    out.seed = seed;
    out.distances.resize(n);
    for (long long i = 0; i < n; ++i) {
        const double u = rng.uniform();
        if (d_ == 2) {
            // density cosh(s): closed-form inverse of sinh
            out.distances[i] = std::asinh(u * std::sinh(r_));
        } else {
            out.distances[i] = radial_->sample(u);
        }
    }
    return out;
}

ChordSample sample_hyperbolic_chords(int d, double r, double gamma, uint64_t seed,
                                     uint64_t stream) {
    return ChordSampler(d, r).sample(gamma, seed, stream);
}

double f1_hyperbolic(const ChordSample& chords) {
    double sum = 0.0;
    for (double s : chords.distances) sum += chord_length(chords.d, chords.r, s);
    return sum;
}

void dump_csv(std::ostream& os, const PointSample& sample, int replicate, bool header) {
    if (header) {
        os << "replicate,point";
        for (int c = 0; c < sample.embed_dim; ++c) os << ",c" << c;
        os << "\n";
    }
    for (int i = 0; i < sample.size(); ++i) {
        os << replicate << "," << i;
        const auto p = sample.point(i);
        for (double v : p) os << "," << v;
        os << "\n";
    }
}

}  // namespace ustat
