#include "ballstab/oracle.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "ballstab/quadrature.hpp"
#include "ballstab/specfun.hpp"

namespace ballstab::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_surface_dim(int d) {
    if (d != 2 && d != 3) {
        throw std::domain_error("sphere quadrature: only d = 2 and d = 3 are supported");
    }
}
}  // namespace

double legendre_p(int k, double x) {
    if (k == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double legendre_p_deriv(int k, double x) {
    if (k == 0) return 0.0;
    // (1 - x^2) P_k' = k (P_{k-1} - x P_k)
    const double denom = 1.0 - x * x;
    if (std::fabs(denom) < 1e-14) {
        // endpoint limit: P_k'(+-1) = (+-1)^{k+1} k(k+1)/2
        const double sign = (x > 0.0 || k % 2 == 1) ? 1.0 : -1.0;
        return sign * 0.5 * k * (k + 1.0);
    }
    return k * (legendre_p(k - 1, x) - x * legendre_p(k, x)) / denom;
}

double zonal_harmonic(int k, int d, double polar_cos_or_angle) {
    require_surface_dim(d);
    if (d == 2) {
        if (k == 0) return 1.0 / std::sqrt(kTwoPi);
        return std::cos(k * polar_cos_or_angle) / std::sqrt(kPi);
    }
    return std::sqrt((2.0 * k + 1.0) / (4.0 * kPi)) * legendre_p(k, polar_cos_or_angle);
}

SphereQuadrature make_sphere_quadrature(int d, int order) {
    require_surface_dim(d);
    if (order < 1) {
        throw std::domain_error("sphere quadrature: order must be >= 1");
    }
    SphereQuadrature q;
    q.d = d;
    q.order = order;
    if (d == 2) {
        const int n = 2 * order + 1;
        q.nodes.resize(n);
        for (int i = 0; i < n; ++i) {
            const double th = kTwoPi * i / n;
            q.nodes[i] = {{std::cos(th), std::sin(th), 0.0}, kTwoPi / n};
        }
        return q;
    }
    const GaussLegendre& gl = gauss_legendre(order + 1);
    const int m = 2 * order;
    q.nodes.reserve(static_cast<size_t>(gl.nodes.size()) * m);
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = gl.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int j = 0; j < m; ++j) {
            const double phi = kTwoPi * j / m;
            q.nodes.push_back({{s * std::cos(phi), s * std::sin(phi), u},
                               gl.weights[i] * kTwoPi / m});
        }
    }
    return q;
}

double mu_oracle(int k, double sigma, int d, int order) {
    require_surface_dim(d);
    if (k < 1) {
        throw std::domain_error("mu_oracle: mode index must be >= 1");
    }
    if (!(sigma > -(d - 1.0))) {
        throw std::domain_error("mu_oracle: sigma must exceed -(d-1)");
    }
    if (d == 2) {
        const int n = 2 * order + 1;
        const double w = kTwoPi / n;
        std::vector<double> yx(n), yy(n), thx(n), thy(n);
        for (int i = 0; i < n; ++i) {
            thx[i] = kTwoPi * i / n;
            thy[i] = kTwoPi * (i + 0.5) / n;  // offset grid, never hits x = y
            yx[i] = zonal_harmonic(k, 2, thx[i]);
            yy[i] = zonal_harmonic(k, 2, thy[i]);
        }
        double total = 0.0, norm = 0.0;
        for (int i = 0; i < n; ++i) {
            norm += w * yx[i] * yx[i];
            for (int j = 0; j < n; ++j) {
                const double dist2 = 2.0 - 2.0 * std::cos(thx[i] - thy[j]);
                const double dy = yx[i] - yy[j];
                total += w * w * std::pow(dist2, 0.5 * sigma) * dy * dy;
            }
        }
        return total / norm;
    }

    // d = 3: zonal integrand, so the two azimuth sums collapse into one sum
    // over the (offset) azimuth difference.
    const int n = order + 1;
    const GaussLegendre& gl = gauss_legendre(n);
    const int m = 2 * order;
    std::vector<double> cos_psi(m);
    for (int l = 0; l < m; ++l) {
        cos_psi[l] = std::cos(kTwoPi * (l + 0.5) / m);
    }
    std::vector<double> z(n), s(n);
    for (int i = 0; i < n; ++i) {
        z[i] = legendre_p(k, gl.nodes[i]);
        s[i] = std::sqrt(std::max(0.0, 1.0 - gl.nodes[i] * gl.nodes[i]));
    }
    double total = 0.0, norm = 0.0;
    for (int i = 0; i < n; ++i) {
        norm += gl.weights[i] * z[i] * z[i];
        for (int j = 0; j < n; ++j) {
            const double dz = z[i] - z[j];
            if (dz == 0.0) continue;
            const double a = 2.0 - 2.0 * gl.nodes[i] * gl.nodes[j];
            const double b = 2.0 * s[i] * s[j];
            double ker = 0.0;
            for (int l = 0; l < m; ++l) {
                ker += std::pow(std::max(a - b * cos_psi[l], 0.0), 0.5 * sigma);
            }
            total += gl.weights[i] * gl.weights[j] * dz * dz * ker * (kTwoPi / m) * kTwoPi;
        }
    }
    norm *= kTwoPi;
    return total / norm;
}

double lambda_oracle(int k, int d, int order) {
    require_surface_dim(d);
    if (k < 1) {
        throw std::domain_error("lambda_oracle: mode index must be >= 1");
    }
    if (d == 2) {
        const int n = 2 * order + 1;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            const double th = kTwoPi * i / n;
            const double dy = -k * std::sin(k * th);
            const double y = std::cos(k * th);
            num += dy * dy;
            den += y * y;
        }
        return num / den;
    }
    const GaussLegendre& gl = gauss_legendre(order + 1);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = gl.nodes[i];
        const double p = legendre_p(k, u);
        const double dp = legendre_p_deriv(k, u);
        num += gl.weights[i] * dp * dp * (1.0 - u * u);
        den += gl.weights[i] * p * p;
    }
    return num / den;
}

double c2_oracle(double sigma, int d, int order) {
    require_surface_dim(d);
    if (!(sigma > -(d - 1.0))) {
        throw std::domain_error("c2_oracle: sigma must exceed -(d-1)");
    }
    if (d == 2) {
        const int n = 2 * order + 1;
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            const double th = kTwoPi * (j + 0.5) / n;
            total += (kTwoPi / n) * std::pow(2.0 - 2.0 * std::cos(th), 0.5 * (sigma + 2.0));
        }
        return total;
    }
    const GaussLegendre& gl = gauss_legendre(order + 1);
    double total = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        total += gl.weights[i] * std::pow(2.0 - 2.0 * gl.nodes[i], 0.5 * (sigma + 2.0));
    }
    return kTwoPi * total;
}

namespace {

std::uint64_t shard_seed(std::uint64_t master, std::uint64_t idx) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (idx + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform in (0, 1]; the closed upper end keeps log() finite in Box-Muller.
double next_unit(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

struct ShardSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

ShardSums run_shard(double sigma, int d, long long count, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const int n_gauss = 2 * ((d + 1) / 2);
    std::vector<double> g(n_gauss);
    ShardSums out;
    std::vector<double> x(d), y(d);
    for (long long s = 0; s < count; ++s) {
        for (auto* pt : {&x, &y}) {
            for (int i = 0; i < n_gauss; i += 2) {
                const double u1 = next_unit(eng);
                const double u2 = next_unit(eng);
                const double rad = std::sqrt(-2.0 * std::log(u1));
                g[i] = rad * std::cos(kTwoPi * u2);
                g[i + 1] = rad * std::sin(kTwoPi * u2);
            }
            double norm2 = 0.0;
            for (int i = 0; i < d; ++i) norm2 += g[i] * g[i];
            const double scale = std::pow(next_unit(eng), 1.0 / d) / std::sqrt(norm2);
            for (int i = 0; i < d; ++i) (*pt)[i] = g[i] * scale;
        }
        double dist2 = 0.0;
        for (int i = 0; i < d; ++i) {
            const double diff = x[i] - y[i];
            dist2 += diff * diff;
        }
        const double v = std::pow(dist2, 0.5 * sigma);
        out.sum += v;
        out.sum_sq += v * v;
    }
    return out;
}

}  // namespace

McResult interaction_mc(double sigma, int d, long long n_samples, std::uint64_t seed) {
    if (d < 1) {
        throw std::domain_error("interaction_mc: dimension must be >= 1");
    }
    if (!(sigma > -static_cast<double>(d))) {
        throw std::domain_error("interaction_mc: sigma must exceed -d (divergent integral)");
    }
    if (n_samples < 1000) {
        throw std::domain_error("interaction_mc: need at least 1000 samples");
    }

    constexpr long long kShardSize = 1 << 16;
    const long long n_shards = (n_samples + kShardSize - 1) / kShardSize;
    std::vector<ShardSums> sums(n_shards);

    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(n_shards)));
    std::vector<std::future<void>> futures;
    futures.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        futures.push_back(std::async(std::launch::async, [&, t]() {
            for (long long s = t; s < n_shards; s += n_threads) {
                const long long count =
                    std::min(kShardSize, n_samples - s * kShardSize);
                sums[s] = run_shard(sigma, d, count, shard_seed(seed, s));
            }
        }));
    }
    for (auto& f : futures) f.get();

    // Combine in shard order so the result does not depend on scheduling.
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& sh : sums) {
        sum += sh.sum;
        sum_sq += sh.sum_sq;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    const double omega = unit_ball_volume(d);

    McResult res;
    res.estimate = omega * omega * mean;
    res.std_error = omega * omega * std::sqrt(var / n);
    res.n_samples = n_samples;
    res.seed = seed;
    return res;
}

}  // namespace ballstab::oracle
