#pragma once

#include <vector>

namespace ballstab {

// The model triple (d, alpha, beta): repulsion kernel |x-y|^{-alpha},
// attraction kernel |x-y|^{beta}, ambient dimension d.
struct ModelParams {
    int d = 3;
    double alpha = 1.0;
    double beta = 4.0;

    // Throws std::domain_error naming the violated bound.
    void validate() const;
};

// Laplace-Beltrami eigenvalue on S^{d-1}: k(k+d-2) for k >= 1, zero for k = 0.
double lambda_k(int k, int d);

// Dimension of the space of degree-k spherical harmonics on S^{d-1}.
// Throws std::overflow_error if the count exceeds unsigned 64-bit range.
unsigned long long multiplicity(int k, int d);

// Gamma prefactor of the nonlocal eigenvalue:
//   (d-1) omega_{d-1} 2^{d-1+sigma} Gamma((d-1+sigma)/2) Gamma((d-1)/2)
//       / Gamma((2d-2+sigma)/2),
// valid for sigma > -(d-1).
double mu_prefactor(double sigma, int d);

// prod_{j=0}^{k-1} (j - sigma/2) / (j + d - 1 + sigma/2); equals 1 for k = 0.
// Evaluated factor by factor, so it stays finite for any k.
double mu_product(int k, double sigma, int d);

// Nonlocal eigenvalue mu_k(sigma) = prefactor * (1 - product), mu_0 = 0.
double mu_k(int k, double sigma, int d);

// Limit of mu_k(sigma) as k -> infinity. The product telescopes into a ratio
// of Gamma functions that decays like k^{-(d-1+sigma)}, so the bracket tends
// to 1 and the limit is the prefactor itself.
double mu_k_limit(double sigma, int d);

// The constant value of int_{S^{d-1}} |x-y|^sigma |nu(x)-nu(y)|^2 dH_y,
// which coincides with mu_1(sigma).
double nonlocal_curvature(double sigma, int d);

// Two-body interaction energy of the unit ball, J_sigma(B_1) =
// int_{B_1} int_{B_1} |x-y|^sigma, for sigma > -d. Reduced through the
// covariogram C(r) = |B_1 cap (B_1 + r e)| to a one-dimensional integral
// evaluated adaptively to ~1e-10 relative accuracy.
double interaction_energy_ball(double sigma, int d);

// Eigenvalue table for modes 0..k_max at fixed parameters.
struct ModeSpectrum {
    int k_max = 0;
    std::vector<double> lambda;    // lambda_k
    std::vector<double> mu_alpha;  // mu_k(-alpha)
    std::vector<double> mu_beta;   // mu_k(beta)
};

ModeSpectrum make_mode_spectrum(const ModelParams& params, int k_max);

}  // namespace ballstab
