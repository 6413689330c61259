#include "ustat/moments.hpp"

#include <cmath>
#include <vector>

namespace ustat {

KernelIntegrals KernelIntegrals::constant_kernel(double c, double total_mass) {
    KernelIntegrals ki;
    ki.eval = [c, total_mass](const Subpartition& sp) {
        return std::pow(c, sp.diagram.ell) * std::pow(total_mass, sp.k());
    };
    return ki;
}

double poisson_raw_moment(double alpha, int n) {
    if (alpha <= 0.0) throw std::invalid_argument("poisson_raw_moment: alpha must be > 0");
    if (n < 0) throw std::invalid_argument("poisson_raw_moment: n must be >= 0");
    if (n == 0) return 1.0;
    if (n > kStirlingCap) throw CapExceeded("poisson_raw_moment: n exceeds Stirling cap");
    double sum = 0.0;
    double alpha_k = 1.0;
    for (int k = 1; k <= n; ++k) {
        alpha_k *= alpha;
        sum += stirling2(n, k).get_d() * alpha_k;
    }
    return sum;
}

double poisson_moment_bound(double alpha, int n) {
    if (alpha <= 0.0 || n < 1) throw std::invalid_argument("poisson_moment_bound: bad arguments");
    return std::pow(n / std::log1p(n / alpha), n);
}

MomentResult centred_moment_exact(const KernelIntegrals& ki, double gamma, int m, int ell) {
    if (ell < 2) throw std::invalid_argument("centred_moment_exact: ell must be >= 2");
    MomentResult res;
    res.ell = ell;
    double sum = 0.0, comp = 0.0;  // Neumaier compensation
    enumerate_star2(m, ell, [&](const Subpartition& sp) {
        const double term = std::pow(gamma, sp.k()) * ki.eval(sp);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        ++res.term_count;
    });
    res.value = sum + comp;
    return res;
}

double centred_moment_constant_kernel(double alpha1, double alpha2, double gamma, int m,
                                      int ell) {
    if (ell < 2) throw std::invalid_argument("centred_moment_constant_kernel: ell must be >= 2");
    const auto counts = count_star2_by_k(m, ell);
    double sum = 0.0;
    for (int k = 0; k < static_cast<int>(counts.size()); ++k) {
        if (counts[k] == 0) continue;
        sum += counts[k].get_d() * std::pow(gamma * alpha1, k);
    }
    return std::pow(alpha2, ell) * sum;
}

double centred_moment_falling_factorial(double alpha1, double alpha2, double gamma, int m,
                                        int ell) {
    const double alpha = gamma * alpha1;
    // coefficients of (x)_m as a polynomial in x: signed Stirling numbers of
    // the first kind, built from (x)_m = (x)_{m-1} * (x - m + 1)
    std::vector<double> poly{0.0, 1.0};  // (x)_1 = x
    for (int i = 1; i < m; ++i) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * i;
        }
        poly = std::move(next);
    }
    // mu = E[(P)_m] = alpha^m
    const double mu = std::pow(alpha, m);
    // E[((P)_m - mu)^ell]: expand the polynomial power and use raw moments
    std::vector<double> centred(poly);
    centred[0] -= mu;
    std::vector<double> power{1.0};
    for (int i = 0; i < ell; ++i) {
        std::vector<double> next(power.size() + centred.size() - 1, 0.0);
        for (size_t a = 0; a < power.size(); ++a)
            for (size_t b = 0; b < centred.size(); ++b) next[a + b] += power[a] * centred[b];
        power = std::move(next);
    }
    double sum = 0.0;
    for (size_t n = 0; n < power.size(); ++n) {
        if (power[n] == 0.0) continue;
        sum += power[n] * poisson_raw_moment(alpha, static_cast<int>(n));
    }
    return std::pow(alpha2, ell) * sum;
}

double variance_exact(std::span<const double> fk_norms_sq, double gamma, int m) {
    if (static_cast<int>(fk_norms_sq.size()) != m)
        throw std::invalid_argument("variance_exact: need exactly m norms");
    double sum = 0.0;
    double kfact = 1.0;
    for (int k = 1; k <= m; ++k) {
        kfact *= k;
        if (fk_norms_sq[k - 1] < 0.0) throw std::invalid_argument("variance_exact: negative norm");
        sum += std::pow(gamma, 2 * m - k) * kfact * fk_norms_sq[k - 1];
    }
    return sum;
}

double centred_moment_upper(const A1Params& p, double gamma, int m, int ell, MomentRegime regime,
                            bool absorb_beta0) {
    p.validate();
    if (ell < 2) throw std::invalid_argument("centred_moment_upper: ell must be >= 2");
    const double gb1 = gamma * p.beta1;
    if (gb1 <= 0.0) throw std::invalid_argument("centred_moment_upper: gamma*beta1 must be > 0");
    if (absorb_beta0 && ell < std::max(std::log(p.beta0), 2.0))
        throw std::domain_error("centred_moment_upper: corollary form needs ell >= max(log beta0, 2)");
    const double ml = double(m) * ell;
    switch (regime) {
        case MomentRegime::general: {
            const double extra = absorb_beta0 ? std::exp(1.0) : 1.0;
            const double numer = std::pow(2.0, p.q * m) * extra * std::pow(ml, m) * p.beta2 *
                                 std::pow(std::max(1.0, gb1 / ml), (m - 0.5) * p.q);
            const double denom = std::pow(std::log1p(ml / gb1), m * (1.0 - p.q));
            const double base = numer / denom;
            return (absorb_beta0 ? 1.0 : p.beta0) * std::pow(base, ell);
        }
        case MomentRegime::high_intensity: {
            if (gb1 < 2.0 * ml)
                throw std::domain_error(
                    "centred_moment_upper: high-intensity regime needs gamma*beta1 >= 2*m*ell");
            const double extra = absorb_beta0 ? std::exp(2.0) : 1.0;
            const double base =
                std::pow(2.0, 2 * m + 1) * extra * ml * p.beta2 * p.beta2 * std::pow(gb1, 2 * m - 1);
            return (absorb_beta0 ? 1.0 : p.beta0) * std::pow(base, ell / 2.0);
        }
    }
    throw std::logic_error("centred_moment_upper: unreachable");
}

}  // namespace ustat
