#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ballstab::oracle {

// Node set on S^{d-1} for d = 2 (offset trapezoid in the angle) or d = 3
// (Gauss-Legendre in cos(polar) times uniform azimuth).
struct SphereNode {
    std::array<double, 3> point{};
    double weight = 0.0;
};

struct SphereQuadrature {
    int d = 3;
    int order = 16;
    std::vector<SphereNode> nodes;
};

// d = 2: 2*order+1 equally spaced angles (odd count, so no harmonic of
// degree <= 2*order aliases to a constant). d = 3: (order+1) polar Gauss
// nodes times 2*order azimuths.
SphereQuadrature make_sphere_quadrature(int d, int order);

// Real zonal harmonic used as the per-degree representative, normalized in
// L^2(S^{d-1}): cos(k theta)/sqrt(pi) for d = 2, sqrt((2k+1)/(4 pi)) P_k(cos)
// for d = 3. Exposed for tests.
double zonal_harmonic(int k, int d, double polar_cos_or_angle);

// Legendre polynomial and derivative by recurrence.
double legendre_p(int k, double x);
double legendre_p_deriv(int k, double x);

// Brute-force value of the double surface integral
//   int int |x-y|^sigma |Y_k(x) - Y_k(y)|^2 dH dH / ||Y_k||^2,
// which converges to mu_k(sigma) as the order grows. The second copy of the
// azimuth grid is offset half a step so the diagonal x = y is never sampled;
// the integrand vanishes quadratically there, taming the kernel singularity.
double mu_oracle(int k, double sigma, int d, int order);

// Quadrature Rayleigh quotient int |grad_tau Y_k|^2 / int Y_k^2, converging
// to lambda_k = k(k+d-2).
double lambda_oracle(int k, int d, int order);

// Direct quadrature of int |x-y|^sigma |nu(x)-nu(y)|^2 dH_y at a fixed
// boundary point; on the unit sphere the normal difference equals x - y.
double c2_oracle(double sigma, int d, int order);

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long long n_samples = 0;
    std::uint64_t seed = 0;
    const char* generator = "mt19937_64+box-muller";
};

// Monte Carlo estimate of J_sigma(B_1) from uniform point pairs in the unit
// ball. Sampling is sharded in fixed-size blocks whose seeds derive from the
// master seed, so the estimate is reproducible bit for bit and independent
// of how shards are scheduled.
McResult interaction_mc(double sigma, int d, long long n_samples, std::uint64_t seed);

}  // namespace ballstab::oracle
