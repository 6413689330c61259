#pragma once

#include <functional>
#include <span>

#include "ustat/combinat.hpp"
#include "ustat/model.hpp"

namespace ustat {

// Provider of the integral ∫(f^{⊗ℓ})_σ dΛ^{k(σ)} for a subpartition σ.
struct KernelIntegrals {
    std::function<double(const Subpartition&)> eval;

    // f ≡ c on a space of total mass a: the integral collapses to c^ℓ a^{k(σ)}.
    static KernelIntegrals constant_kernel(double c, double total_mass);
};

struct MomentResult {
    int ell = 0;
    double value = 0.0;
    long long term_count = 0;  // |Pi**_{>=2}(m;ell)|
};

// E[P_alpha^n] = Σ_{k=1}^n S(n,k) alpha^k (exact Stirling expansion; n=0 -> 1).
double poisson_raw_moment(double alpha, int n);

// Ahle's bound E[P_alpha^n] <= (n / log(1+n/alpha))^n.
double poisson_moment_bound(double alpha, int n);

// ℓ-th centred moment by subpartition enumeration:
// Σ_{σ∈Π**≥2(m;ℓ)} γ^{k(σ)} ∫(f^{⊗ℓ})_σ.
MomentResult centred_moment_exact(const KernelIntegrals& ki, double gamma, int m, int ell);

// Counting route for constant kernels: α₂^ℓ Σ_k S^m_{≥2}(ℓ,k) (γα₁)^k.
double centred_moment_constant_kernel(double alpha1, double alpha2, double gamma, int m, int ell);

// Falling-factorial route: α₂^ℓ E[((P_{γα₁})_m − E(P_{γα₁})_m)^ℓ], evaluated
// through the Stirling expansion of (x)_m and exact Poisson raw moments.
// Equal to the counting route; kept as an independent cross-check.
double centred_moment_falling_factorial(double alpha1, double alpha2, double gamma, int m,
                                        int ell);

// Variance Σ_{k=1}^m γ^{2m−k} k! ||f_k||² (production path for ℓ=2).
double variance_exact(std::span<const double> fk_norms_sq, double gamma, int m);

enum class MomentRegime { general, high_intensity };

// Closed-form centred-moment upper bounds. The high-intensity regime requires
// γβ₁ >= 2mℓ. With absorb_beta0 the β₀ prefactor is replaced by e^ℓ, which
// needs ℓ >= max(log β₀, 2).
double centred_moment_upper(const A1Params& p, double gamma, int m, int ell, MomentRegime regime,
                            bool absorb_beta0 = false);

}  // namespace ustat
