#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "ballstab/curves.hpp"
#include "ballstab/spectrum.hpp"

namespace ballstab::testing {

// eps_k from raw eigenvalue differences, bypassing the CoeffLadder route.
inline double eps_from_raw_spectra(int k, double m, const ModelParams& p) {
    const double num = (mu_k(k, -p.alpha, p.d) - mu_k(1, -p.alpha, p.d)) -
                       std::pow(m, (p.alpha + p.beta) / p.d) *
                           (mu_k(1, p.beta, p.d) - mu_k(k, p.beta, p.d));
    return std::pow(m, (p.d - p.alpha + 1.0) / p.d) * num / (lambda_k(k, p.d) - lambda_k(1, p.d));
}

// Golden-section maximization of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-12) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Brute-force stability boundary: max over modes 2..k_cap of eps_k built
// from the raw spectrum table.
struct BruteEnvelope {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<int> active;
};

inline BruteEnvelope brute_envelope(const ModelParams& p, double m_min, double m_max, int n,
                                    int k_cap) {
    const ModeSpectrum spec = make_mode_spectrum(p, k_cap);
    const double r = (p.d - p.alpha + 1.0) / p.d;
    const double q = (p.alpha + p.beta) / p.d;
    BruteEnvelope env;
    env.grid.resize(n);
    env.values.resize(n);
    env.active.resize(n);
    for (int i = 0; i < n; ++i) {
        const double m = m_min + (m_max - m_min) * i / (n - 1);
        const double m_r = std::pow(m, r);
        const double m_q = std::pow(m, q);
        double best = 0.0;
        int arg = 1;
        for (int k = 2; k <= k_cap; ++k) {
            const double gap = spec.lambda[k] - spec.lambda[1];
            const double val = m_r *
                               ((spec.mu_alpha[k] - spec.mu_alpha[1]) -
                                m_q * (spec.mu_beta[1] - spec.mu_beta[k])) /
                               gap;
            if (val > best) {
                best = val;
                arg = k;
            }
        }
        env.grid[i] = m;
        env.values[i] = best;
        env.active[i] = best > 0.0 ? arg : 1;
    }
    return env;
}

// Sequence-limit oracle for the low-beta mass threshold: fit
//   m_k = M - c1 k^{-p} - c2 k^{-e}
// at k, 2k, 4k with the known leading rate p = d-1-alpha and the next
// exponent e = min(2p, p+1), then read off M.
inline double extrapolate_root_limit(const ModelParams& params, int k_top = 10000) {
    CoeffLadder ladder(params);
    ladder.extend(k_top);
    const std::array<int, 3> ks = {k_top / 4, k_top / 2, k_top};
    const double p = params.d - 1.0 - params.alpha;
    const double e = std::min(2.0 * p, p + 1.0);

    std::array<std::array<double, 3>, 3> a{};
    std::array<double, 3> rhs{};
    for (int i = 0; i < 3; ++i) {
        a[i] = {1.0, std::pow(static_cast<double>(ks[i]), -p),
                std::pow(static_cast<double>(ks[i]), -e)};
        rhs[i] = ladder.root(ks[i]);
    }
    // Cramer on the 3x3 system.
    auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(a);
    auto col_replaced = a;
    for (int i = 0; i < 3; ++i) col_replaced[i][0] = rhs[i];
    return det3(col_replaced) / det;
}

// Deterministic xorshift-style generator for parameter draws in tests.
class TestRng {
   public:
    explicit TestRng(unsigned long long seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    double uniform(double lo, double hi) {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        const double u = static_cast<double>(state_ >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform(0.0, 1.0) * (hi - lo + 1)) % (hi - lo + 1);
    }

   private:
    unsigned long long state_;
};

}  // namespace ballstab::testing
