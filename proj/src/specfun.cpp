#include "ballstab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ballstab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("log_gamma: argument must be a positive finite real");
    }
    // Lanczos coefficients for g = 7, n = 9.
    static constexpr double kCoeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = kCoeff[0];
    for (int i = 1; i < 9; ++i) {
        acc += kCoeff[i] / (z + i);
    }
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double unit_ball_volume(int n) {
    if (n <= 0) {
        throw std::domain_error("unit_ball_volume: dimension must be >= 1");
    }
    return std::exp(0.5 * n * std::log(kPi) - log_gamma(0.5 * n + 1.0));
}

ShiftParams make_shift_params(int d, double alpha, double beta) {
    if (d < 2) {
        throw std::domain_error("shift params: dimension d must be >= 2");
    }
    if (!(alpha > 0.0) || !(alpha < d - 1.0)) {
        throw std::domain_error("shift params: alpha must satisfy 0 < alpha < d-1 (got alpha=" +
                                std::to_string(alpha) + ", d=" + std::to_string(d) + ")");
    }
    if (!(beta > 0.0)) {
        throw std::domain_error("shift params: beta must be > 0");
    }
    ShiftParams s;
    s.ell = 0.5 * (d - 1);
    s.t = s.ell - 0.5 * alpha;
    s.tau = s.ell + 0.5 * beta;
    return s;
}

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

namespace {

SignedLog accumulate(int k, double shift, ProductPath path) {
    const bool use_log = (path == ProductPath::LogSpace) ||
                         (path == ProductPath::Auto && k > 64);
    SignedLog out;
    if (!use_log) {
        double prod = 1.0;
        for (int j = 1; j <= k - 1; ++j) {
            prod *= (j + shift);
        }
        if (prod == 0.0) {
            out.sign = 0;
            out.log_abs = -std::numeric_limits<double>::infinity();
        } else {
            out.sign = prod > 0.0 ? 1 : -1;
            out.log_abs = std::log(std::fabs(prod));
        }
        return out;
    }
    int sign = 1;
    double log_abs = 0.0;
    for (int j = 1; j <= k - 1; ++j) {
        const double f = j + shift;
        if (f == 0.0) {
            out.sign = 0;
            out.log_abs = -std::numeric_limits<double>::infinity();
            return out;
        }
        if (f < 0.0) sign = -sign;
        log_abs += std::log(std::fabs(f));
    }
    out.sign = sign;
    out.log_abs = log_abs;
    return out;
}

}  // namespace

TelescopeProducts telescope_products(int k, const ShiftParams& shifts, ProductPath path) {
    if (k < 2) {
        throw std::domain_error("telescope_products: k must be >= 2");
    }
    TelescopeProducts p;
    p.a = accumulate(k, shifts.ell - shifts.t, path);
    p.b = accumulate(k, shifts.ell + shifts.t, path);
    p.c = accumulate(k, shifts.ell - shifts.tau, path);
    p.d = accumulate(k, shifts.ell + shifts.tau, path);
    return p;
}

}  // namespace ballstab
