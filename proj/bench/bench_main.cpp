// Timings of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>

#include "ustat/combinat.hpp"
#include "ustat/experiments.hpp"
#include "ustat/geometry.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ustat;

namespace {

template <typename Fn>
double time_s(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_replicates() {
    Scenario sc;
    sc.name = "bench-edges";
    sc.kind = ScenarioKind::edge_count;
    sc.space = SpaceSpec{0.0, 2};
    sc.window_radius = 1.0;
    sc.rho = 0.2;
    sc.gamma = 50.0;
    sc.t_grid = {0.0};
    sc.replications = 10000;
    sc.seed = 1;

    double checksum_serial = 0, checksum_parallel = 0;
    const double ts = time_s([&] {
        for (double v : simulate_values(sc, 1, Exec::serial)) checksum_serial += v;
    });
    const double tp = time_s([&] {
        for (double v : simulate_values(sc, 1, Exec::parallel)) checksum_parallel += v;
    });
    std::printf("replicate loop (%lld edge-count reps): serial %.3f s, parallel %.3f s, x%.2f\n",
                sc.replications, ts, tp, ts / tp);
    if (checksum_serial != checksum_parallel) std::printf("  MISMATCH in checksums!\n");
}

void bench_pairs() {
    const BallSampler sampler(SpaceSpec{0.0, 2}, 1.0);
    const PointSample big = sampler.sample(3000.0, 7, 0);
    std::printf("pair scan on %d points:\n", big.size());
    long long a = 0, b = 0, c = 0;
    const double t_brute = time_s([&] { a = edge_count_bruteforce(big, 0.05); });
    const double t_grid = time_s([&] { b = edge_count(big, 0.05, Exec::serial); });
    const double t_grid_par = time_s([&] { c = edge_count(big, 0.05, Exec::parallel); });
    std::printf("  brute %.3f s | grid serial %.3f s | grid parallel %.3f s (x%.2f)\n", t_brute,
                t_grid, t_grid_par, t_grid / t_grid_par);
    if (a != b || b != c) std::printf("  MISMATCH: %lld %lld %lld\n", a, b, c);
}

void bench_counting() {
    const int m = 2, ell = 7;
    std::vector<BigInt> serial, parallel, dp;
    const double ts = time_s([&] { serial = count_star2_by_k_enum(m, ell, false); });
    const double tp = time_s([&] { parallel = count_star2_by_k_enum(m, ell, true); });
    const double td = time_s([&] { dp = count_star2_by_k_dp(m, ell); });
    std::printf("subpartition count m=%d ell=%d: enum serial %.3f s, enum parallel %.3f s "
                "(x%.2f), dp %.4f s\n",
                m, ell, ts, tp, ts / tp, td);
    if (serial != parallel || serial != dp) std::printf("  MISMATCH between routes!\n");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP with %d threads\n", omp_get_max_threads());
#endif
    bench_replicates();
    bench_pairs();
    bench_counting();
    return 0;
}
