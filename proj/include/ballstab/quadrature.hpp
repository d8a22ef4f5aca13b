#pragma once

#include <cmath>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ballstab {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computes (and caches) an n-point rule. Roots of P_n are found by Newton
// iteration from the Chebyshev-like initial guesses; weights from the
// standard derivative formula. Thread-safe.
inline const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mu;
    static std::unordered_map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendre g;
    g.nodes.assign(n, 0.0);
    g.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.weights[i] = w;
        g.nodes[n - 1 - i] = x;
        g.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(g)).first->second;
}

// Fixed-order rule on [a, b].
template <class F>
double integrate_gl(F&& f, double a, double b, int n) {
    const GaussLegendre& g = gauss_legendre(n);
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += g.weights[i] * f(c + h * g.nodes[i]);
    }
    return h * sum;
}

// Adaptive bisection with a nested 15/31-point Gauss pair as the local
// error estimate. Integrable endpoint singularities get pushed down by
// repeated halving until the local tolerance or the depth cap is met.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                          double abs_tol = 0.0, int max_depth = 48) {
    const double span = b - a;
    auto rec = [&](auto&& self, double lo, double hi, int depth) -> double {
        const double coarse = integrate_gl(f, lo, hi, 15);
        const double fine = integrate_gl(f, lo, hi, 31);
        const double err = std::fabs(fine - coarse);
        const double local_abs = abs_tol * ((hi - lo) / span);
        if (depth >= max_depth || err <= local_abs + rel_tol * std::fabs(fine)) {
            return fine;
        }
        const double mid = 0.5 * (lo + hi);
        return self(self, lo, mid, depth + 1) + self(self, mid, hi, depth + 1);
    };
    return rec(rec, a, b, 0);
}

}  // namespace ballstab
