#include "ballstab/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ballstab/quadrature.hpp"
#include "ballstab/specfun.hpp"

namespace ballstab {

void ModelParams::validate() const {
    if (d < 2) {
        throw std::domain_error("params: dimension d must be >= 2 (got d=" + std::to_string(d) + ")");
    }
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < d - 1.0)) {
        throw std::domain_error("params: alpha must satisfy 0 < alpha < d-1 (got alpha=" +
                                std::to_string(alpha) + ", d-1=" + std::to_string(d - 1) + ")");
    }
    if (!std::isfinite(beta) || !(beta > 0.0)) {
        throw std::domain_error("params: beta must be > 0 (got beta=" + std::to_string(beta) + ")");
    }
}

double lambda_k(int k, int d) {
    if (k < 0) {
        throw std::domain_error("lambda_k: mode index must be >= 0");
    }
    if (d < 2) {
        throw std::domain_error("lambda_k: dimension must be >= 2");
    }
    if (k == 0) return 0.0;
    return static_cast<double>(k) * (k + d - 2.0);
}

unsigned long long multiplicity(int k, int d) {
    if (k < 0 || d < 2) {
        throw std::domain_error("multiplicity: need k >= 0 and d >= 2");
    }
    // C(k+d-1, d-1) - C(k+d-3, d-1), with C(n, r) = 0 for n < r.
    auto binom = [](long long n, long long r) -> unsigned long long {
        if (n < r || r < 0) return 0ULL;
        r = std::min(r, n - r);
        unsigned __int128 acc = 1;
        for (long long i = 1; i <= r; ++i) {
            acc = acc * static_cast<unsigned long long>(n - r + i);
            acc /= static_cast<unsigned long long>(i);
            if (acc > static_cast<unsigned __int128>(~0ULL)) {
                throw std::overflow_error("multiplicity: harmonic dimension exceeds 64-bit range");
            }
        }
        return static_cast<unsigned long long>(acc);
    };
    const unsigned long long hi = binom(k + d - 1, d - 1);
    const unsigned long long lo = binom(k + d - 3, d - 1);
    return hi - lo;
}

double mu_prefactor(double sigma, int d) {
    if (d < 2) {
        throw std::domain_error("mu_prefactor: dimension must be >= 2");
    }
    if (!(sigma > -(d - 1.0))) {
        throw std::domain_error("mu_prefactor: sigma must exceed -(d-1) (got sigma=" +
                                std::to_string(sigma) + ")");
    }
    const double log_pref = std::log(d - 1.0) + std::log(unit_ball_volume(d - 1)) +
                            (d - 1.0 + sigma) * std::numbers::ln2 +
                            log_gamma(0.5 * (d - 1.0 + sigma)) + log_gamma(0.5 * (d - 1.0)) -
                            log_gamma(0.5 * (2.0 * d - 2.0 + sigma));
    return std::exp(log_pref);
}

double mu_product(int k, double sigma, int d) {
    if (k < 0) {
        throw std::domain_error("mu_product: mode index must be >= 0");
    }
    double prod = 1.0;
    for (int j = 0; j < k; ++j) {
        prod *= (j - 0.5 * sigma) / (j + d - 1.0 + 0.5 * sigma);
    }
    return prod;
}

double mu_k(int k, double sigma, int d) {
    if (k < 0) {
        throw std::domain_error("mu_k: mode index must be >= 0");
    }
    if (k == 0) {
        if (!(sigma > -(d - 1.0))) {
            throw std::domain_error("mu_k: sigma must exceed -(d-1)");
        }
        return 0.0;
    }
    return mu_prefactor(sigma, d) * (1.0 - mu_product(k, sigma, d));
}

double mu_k_limit(double sigma, int d) { return mu_prefactor(sigma, d); }

double nonlocal_curvature(double sigma, int d) { return mu_k(1, sigma, d); }

namespace {

// Covariogram of the unit ball: C(r) = 2 omega_{d-1} int_0^{acos(r/2)} sin^d.
// The integrand is entire, so a fixed Gauss rule reaches machine precision.
double covariogram(double r, int d, double omega_dm1) {
    if (r >= 2.0) return 0.0;
    const double theta_max = std::acos(0.5 * r);
    const double val = integrate_gl(
        [d](double th) { return std::pow(std::sin(th), static_cast<double>(d)); }, 0.0, theta_max,
        48);
    return 2.0 * omega_dm1 * val;
}

}  // namespace

double interaction_energy_ball(double sigma, int d) {
    if (d < 1) {
        throw std::domain_error("interaction_energy_ball: dimension must be >= 1");
    }
    if (!(sigma > -static_cast<double>(d))) {
        throw std::domain_error(
            "interaction_energy_ball: sigma must exceed -d, the integral diverges at sigma=" +
            std::to_string(sigma));
    }
    const double omega_d = unit_ball_volume(d);
    const double omega_dm1 = d >= 2 ? unit_ball_volume(d - 1) : 1.0;
    const double p = sigma + d - 1.0;

    double integral;
    if (p < 0.5) {
        // Substitute r = u^{2/(sigma+d)}: the radial factor becomes exactly
        // u du, removing the endpoint singularity at r = 0.
        const double s = 2.0 / (sigma + d);
        const double u_max = std::pow(2.0, 1.0 / s);
        auto g = [&](double u) { return s * u * covariogram(std::pow(u, s), d, omega_dm1); };
        const double rough = std::fabs(integrate_gl(g, 0.0, u_max, 63));
        integral = integrate_adaptive(g, 0.0, u_max, 1e-11, 1e-13 * rough);
    } else {
        auto g = [&](double r) { return std::pow(r, p) * covariogram(r, d, omega_dm1); };
        const double rough = std::fabs(integrate_gl(g, 0.0, 2.0, 63));
        integral = integrate_adaptive(g, 0.0, 2.0, 1e-11, 1e-13 * rough);
    }
    return d * omega_d * integral;
}

ModeSpectrum make_mode_spectrum(const ModelParams& params, int k_max) {
    params.validate();
    if (k_max < 0) {
        throw std::domain_error("make_mode_spectrum: k_max must be >= 0");
    }
    ModeSpectrum s;
    s.k_max = k_max;
    s.lambda.resize(k_max + 1);
    s.mu_alpha.resize(k_max + 1);
    s.mu_beta.resize(k_max + 1);

    const double pref_a = mu_prefactor(-params.alpha, params.d);
    const double pref_b = mu_prefactor(params.beta, params.d);
    double prod_a = 1.0, prod_b = 1.0;
    s.lambda[0] = 0.0;
    s.mu_alpha[0] = 0.0;
    s.mu_beta[0] = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const int j = k - 1;
        prod_a *= (j + 0.5 * params.alpha) / (j + params.d - 1.0 - 0.5 * params.alpha);
        prod_b *= (j - 0.5 * params.beta) / (j + params.d - 1.0 + 0.5 * params.beta);
        s.lambda[k] = lambda_k(k, params.d);
        s.mu_alpha[k] = pref_a * (1.0 - prod_a);
        s.mu_beta[k] = pref_b * (1.0 - prod_b);
    }
    return s;
}

}  // namespace ballstab
