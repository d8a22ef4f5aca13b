#pragma once

#include <limits>

namespace ballstab {

// Natural log of the Gamma function, x > 0. Lanczos approximation (g = 7,
// nine terms) with reflection below 1/2; relative error stays under 1e-13
// on [1e-3, 1e3]. Throws std::domain_error for non-positive or non-finite x.
double log_gamma(double x);

// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1). n >= 1.
double unit_ball_volume(int n);

// Half-integer shifts shared by all the telescoping products:
//   ell = (d-1)/2,   t = ell - alpha/2,   tau = ell + beta/2.
struct ShiftParams {
    double ell;
    double t;
    double tau;
};

// Validates d >= 2, 0 < alpha < d-1, beta > 0 and fills the shifts.
ShiftParams make_shift_params(int d, double alpha, double beta);

// A real carried as (sign, log|value|) so long products neither overflow
// nor lose track of sign when a factor is negative or zero.
struct SignedLog {
    int sign = 0;  // -1, 0, +1
    double log_abs = -std::numeric_limits<double>::infinity();

    double value() const;
};

struct TelescopeProducts {
    SignedLog a;  // prod_{j=1}^{k-1} (j + ell - t)
    SignedLog b;  // prod_{j=1}^{k-1} (j + ell + t)
    SignedLog c;  // prod_{j=1}^{k-1} (j + ell - tau), may vanish or go negative
    SignedLog d;  // prod_{j=1}^{k-1} (j + ell + tau)
};

enum class ProductPath {
    Auto,      // direct multiplication up to k = 64, log accumulation beyond
    Direct,    // plain double products (overflow-prone for large k)
    LogSpace,  // per-factor log accumulation with separate sign tracking
};

// The four products over j = 1..k-1. k >= 2.
TelescopeProducts telescope_products(int k, const ShiftParams& shifts,
                                     ProductPath path = ProductPath::Auto);

}  // namespace ballstab
