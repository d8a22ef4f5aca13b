#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "ballstab/curves.hpp"
#include "ballstab/specfun.hpp"
#include "test_helpers.hpp"

using namespace ballstab;
using namespace ballstab::testing;

namespace {
constexpr double kPi = std::numbers::pi;

const std::vector<ModelParams>& small_grid() {
    static const std::vector<ModelParams> g = [] {
        std::vector<ModelParams> out;
        for (int d : {2, 3, 4, 6, 10, 12}) {
            for (double fa : {0.1, 0.5, 0.9}) {
                for (double beta : {0.5, 4.0, 40.0}) {
                    out.push_back({d, fa * (d - 1), beta});
                }
            }
        }
        return out;
    }();
    return g;
}
}  // namespace

TEST_CASE("A_2 at d=3, alpha=1") {
    // mu_k(-1) telescopes to 8 pi 2k/(2k+1) and lambda_2 - lambda_1 = 4,
    // so A_2 = (32pi/5 - 16pi/3)/4 = 4pi/15 (frozen from the quadrature oracle).
    const CurveCoeffs c = curve_coeffs(2, {3, 1.0, 4.0});
    CHECK(c.A == doctest::Approx(4.0 * kPi / 15.0).epsilon(1e-12));
    CHECK(c.r == doctest::Approx(1.0));
    CHECK(c.q == doctest::Approx(5.0 / 3.0));
    CHECK(c.A > 0.0);
    CHECK(c.B > 0.0);
}

TEST_CASE("coefficient ratio identities for modes 2 and 3") {
    for (const ModelParams& p : small_grid()) {
        CoeffLadder ladder(p);
        ladder.extend(3);
        const double lhs_a = (ladder.A(3) - ladder.A(2)) / ladder.A(3);
        CHECK(lhs_a == doctest::Approx(-(p.d + 1.0 - p.alpha) / (p.d + 1.0)).epsilon(1e-10));
        const double lhs_b = (ladder.B(3) - ladder.B(2)) / ladder.B(3);
        CHECK(lhs_b == doctest::Approx(-(p.d + 1.0 + p.beta) / (p.d + 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("coefficients are positive with r in its window") {
    for (const ModelParams& p : small_grid()) {
        for (int k : {2, 3, 7, 19}) {
            const CurveCoeffs c = curve_coeffs(k, p);
            CHECK(c.A > 0.0);
            CHECK(c.B > 0.0);
            CHECK(c.r > 2.0 / p.d);
            CHECK(c.r < (p.d + 1.0) / p.d);
            CHECK(c.q > 0.0);
        }
    }
}

TEST_CASE("two routes to A_k agree: raw eigenvalue differences vs telescoped form") {
    for (const ModelParams& p : small_grid()) {
        const ShiftParams s = make_shift_params(p.d, p.alpha, p.beta);
        const double kappa = mu_prefactor(-p.alpha, p.d) * (0.5 * p.alpha) /
                             (p.d - 1.0 - 0.5 * p.alpha);
        for (int k : {2, 3, 5, 11, 31}) {
            const double direct = (mu_k(k, -p.alpha, p.d) - mu_k(1, -p.alpha, p.d)) /
                                  (lambda_k(k, p.d) - lambda_k(1, p.d));
            const TelescopeProducts tp = telescope_products(k, s);
            const double ratio = std::exp(tp.a.log_abs - tp.b.log_abs);
            const double via_kappa = kappa * (1.0 - ratio) / ((k - 1.0) * (k + p.d - 1.0));
            CHECK(direct == doctest::Approx(via_kappa).epsilon(1e-11));
        }
    }
}

TEST_CASE("eps_k basics") {
    const ModelParams p{3, 1.0, 4.0};
    CHECK(eps_k(1, 0.7, p) == 0.0);
    CHECK(eps_k(5, 0.0, p) == 0.0);
    CHECK_THROWS_AS(eps_k(0, 0.5, p), std::domain_error);
    CHECK_THROWS_AS(eps_k(2, -0.2, p), std::domain_error);

    // vanishing at the positive root
    const CurveLandmarks lm = landmarks(2, p);
    CHECK(std::fabs(eps_k(2, lm.root, p)) < 1e-14);

    // single evaluation against the raw-spectrum route
    CHECK(eps_k(2, 1.0, p) == doctest::Approx(eps_from_raw_spectra(2, 1.0, p)).epsilon(1e-12));
    for (const ModelParams& pp : small_grid()) {
        CHECK(eps_k(4, 0.3, pp) ==
              doctest::Approx(eps_from_raw_spectra(4, 0.3, pp)).epsilon(1e-11));
    }
}

TEST_CASE("landmarks: algebraic relations and the golden-section oracle") {
    for (const ModelParams& p : small_grid()) {
        const CurveCoeffs c = curve_coeffs(3, p);
        const CurveLandmarks lm = landmarks(3, p);
        CHECK(lm.crit < lm.root);
        CHECK(lm.crit / lm.root ==
              doctest::Approx(std::pow(c.r / (c.r + c.q), 1.0 / c.q)).epsilon(1e-12));
        CHECK((lm.inflection.has_value()) == (p.alpha < 1.0));
        if (lm.inflection) {
            CHECK(*lm.inflection ==
                  doctest::Approx(std::pow((1.0 - p.alpha) / (1.0 + p.beta), 1.0 / c.q) * lm.crit)
                      .epsilon(1e-12));
        }
    }
    // peak equals a golden-section maximization of the curve itself
    const ModelParams p{3, 1.0, 4.0};
    for (int k : {2, 3, 6}) {
        const CurveLandmarks lm = landmarks(k, p);
        const double m_at_max =
            golden_max([&](double m) { return eps_k(k, m, p); }, 0.0, lm.root);
        CHECK(eps_k(k, m_at_max, p) == doctest::Approx(lm.peak).epsilon(1e-9));
        CHECK(m_at_max == doctest::Approx(lm.crit).epsilon(1e-7));
    }
}

TEST_CASE("alpha beyond 1 gives concavity, alpha = 1 has no inflection") {
    const ModelParams p{4, 1.0, 5.0};
    CHECK_FALSE(landmarks(2, p).inflection.has_value());
    // strict concavity via second differences on a grid
    const ModelParams pc{4, 2.0, 5.0};
    const CurveLandmarks lm = landmarks(2, pc);
    const double h = lm.root / 300.0;
    for (double m = h; m < lm.root - h; m += h) {
        const double dd = eps_k(2, m + h, pc) - 2.0 * eps_k(2, m, pc) + eps_k(2, m - h, pc);
        CHECK(dd < 0.0);
    }
}

TEST_CASE("intersection of modes 2 and 3 sits at the mode-3 maximum") {
    for (const ModelParams& p : small_grid()) {
        const auto m23 = intersection(2, 3, p);
        REQUIRE(m23.has_value());
        const CurveLandmarks lm3 = landmarks(3, p);
        CHECK(*m23 == doctest::Approx(lm3.crit).epsilon(1e-10));
    }
}

TEST_CASE("intersection presence follows the coefficient ordering") {
    const ModelParams p{3, 1.0, 4.0};
    CoeffLadder ladder(p);
    ladder.extend(12);
    for (int k = 2; k <= 11; ++k) {
        const auto mx = intersection(k, k + 1, p);
        const bool crossing = ladder.B(k + 1) < ladder.B(k);  // A always decreases
        CHECK(mx.has_value() == crossing);
    }
    CHECK_THROWS_AS(intersection(2, 2, p), std::domain_error);
    CHECK_THROWS_AS(intersection(1, 3, p), std::domain_error);
}

TEST_CASE("high-beta geometry: m_{3,k} never undercuts m_star") {
    const ModelParams p{6, 3.0, 30.0};
    const double ms = m_star(p);
    CoeffLadder ladder(p);
    ladder.extend(12);
    for (int k = 4; k <= 12; ++k) {
        const auto m3k = intersection(3, k, p);
        if (m3k) {
            CHECK(*m3k >= ms * (1.0 - 1e-9));
        }
        // dense-grid oracle: eps_k never exceeds eps_3 on [0, m_star]
        for (int i = 1; i <= 400; ++i) {
            const double m = ms * i / 400.0;
            CHECK(ladder.eps(k, m) <= ladder.eps(3, m) + 1e-13);
        }
    }
}

TEST_CASE("beta_star closed form") {
    CHECK(beta_star(3, 1.0) == doctest::Approx(22.0).epsilon(1e-13));
    CHECK(beta_star(12, 9.0) == doctest::Approx(86.5).epsilon(1e-13));
    CHECK(beta_star(10, 8.0) == doctest::Approx(134.0).epsilon(1e-13));
    CHECK_THROWS_AS(beta_star(3, 2.0), std::domain_error);
    CHECK_THROWS_AS(beta_star(3, 0.0), std::domain_error);
}

TEST_CASE("m_star: high-beta branch equals the mode-3 root") {
    const ModelParams p{6, 3.0, 30.0};
    const MStarResult res = m_star_checked(p);
    CHECK(res.branch == 1);
    CoeffLadder ladder(p);
    ladder.extend(3);
    CHECK(res.value == doctest::Approx(ladder.root(3)).epsilon(1e-6));
}

TEST_CASE("m_star: low-beta branch equals the root-sequence limit") {
    const ModelParams p{3, 1.0, 4.0};
    const MStarResult res = m_star_checked(p);
    CHECK(res.branch == 2);
    const double lim = extrapolate_root_limit(p, 10000);
    CHECK(res.value == doctest::Approx(lim).epsilon(1e-3));
}

TEST_CASE("m_2^0 never exceeds m_star") {
    for (const ModelParams& p : small_grid()) {
        CoeffLadder ladder(p);
        ladder.extend(2);
        CHECK(ladder.root(2) <= m_star(p) * (1.0 + 1e-9));
    }
}

TEST_CASE("envelope in the two-curve regime") {
    const ModelParams p{6, 3.0, 30.0};
    const double ms = m_star(p);
    const auto m23 = intersection(2, 3, p);
    REQUIRE(m23.has_value());
    const Envelope env = envelope(p, {ms * 1e-4, ms * 0.9999999, 4096});
    CHECK(env.certified);

    CoeffLadder ladder(p);
    ladder.extend(3);
    for (size_t i = 0; i < env.grid.size(); ++i) {
        const double want = std::max(ladder.eps(2, env.grid[i]), ladder.eps(3, env.grid[i]));
        CHECK(std::fabs(env.values[i] - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
        CHECK(env.active_mode[i] == (env.grid[i] < *m23 ? 2 : 3));
    }
    REQUIRE(env.breakpoints.size() == 1);
    CHECK(env.breakpoints[0] == doctest::Approx(*m23).epsilon(1e-9));

    // ordering 0 < m_2^c < m_{2,3} < m_star and the hump shape
    const CurveLandmarks lm2 = landmarks(2, p);
    CHECK(lm2.crit > 0.0);
    CHECK(lm2.crit < *m23);
    CHECK(*m23 < ms);
    for (size_t i = 1; i < env.grid.size(); ++i) {
        if (env.grid[i] < lm2.crit) {
            CHECK(env.values[i] > env.values[i - 1]);
        } else if (env.grid[i - 1] > lm2.crit) {
            CHECK(env.values[i] < env.values[i - 1]);
        }
    }
}

TEST_CASE("envelope vanishes past m_star with active mode 1") {
    for (const ModelParams& p : {ModelParams{6, 3.0, 30.0}, ModelParams{3, 1.0, 4.0}}) {
        const double ms = m_star(p);
        const Envelope env = envelope(p, {ms * 1.000001, ms * 2.0, 64});
        for (size_t i = 0; i < env.grid.size(); ++i) {
            CHECK(env.values[i] == 0.0);
            CHECK(env.active_mode[i] == 1);
        }
    }
}

TEST_CASE("envelope matches the brute-force oracle in the cascade regime") {
    const ModelParams p{3, 1.0, 4.0};
    const double ms = m_star(p);
    const int n = 10000;
    const Envelope env = envelope(p, {ms * 1e-4, ms * 0.99, n});
    const BruteEnvelope brute = brute_envelope(p, ms * 1e-4, ms * 0.99, n, 512);
    CHECK(env.certified);

    int mode_switches = 0;
    std::set<int> distinct;
    for (int i = 0; i < n; ++i) {
        CHECK(std::fabs(env.values[i] - brute.values[i]) <=
              1e-11 * std::max(1e-3, brute.values[i]));
        distinct.insert(env.active_mode[i]);
        if (i && env.active_mode[i] != env.active_mode[i - 1]) {
            ++mode_switches;
            // plateaus only move upward
            CHECK(env.active_mode[i] > env.active_mode[i - 1]);
        }
    }
    CHECK(distinct.size() >= 3);
    CHECK(mode_switches >= 2);
}

TEST_CASE("envelope is bounded by the leading coefficient curve") {
    for (const ModelParams& p : small_grid()) {
        const double ms = m_star(p);
        const CurveCoeffs c2 = curve_coeffs(2, p);
        const Envelope env = envelope(p, {ms * 1e-3, ms * 1.1, 257});
        for (size_t i = 0; i < env.grid.size(); ++i) {
            const double bound = c2.A * std::pow(env.grid[i], c2.r);
            CHECK(env.values[i] <= bound * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("grid refinement shrinks the largest jump") {
    const ModelParams p{3, 1.0, 4.0};
    const double ms = m_star(p);
    double prev_jump = std::numeric_limits<double>::infinity();
    for (int n : {512, 1024, 2048, 4096}) {
        const Envelope env = envelope(p, {0.0, ms, n});
        double jump = 0.0;
        for (size_t i = 1; i < env.grid.size(); ++i) {
            jump = std::max(jump, std::fabs(env.values[i] - env.values[i - 1]));
        }
        CHECK(jump < prev_jump * 1.01);
        prev_jump = jump;
    }
}

TEST_CASE("breakpoints satisfy the crossing equation") {
    const ModelParams p{12, 9.0, 4.0};
    const double ms = m_star(p);
    const Envelope env = envelope(p, {ms * 0.01, ms * 0.999, 4096});
    CoeffLadder ladder(p);
    ladder.extend(env.k_truncation + 1);
    size_t bp = 0;
    for (size_t i = 0; i + 1 < env.grid.size() && bp < env.breakpoints.size(); ++i) {
        if (env.active_mode[i] != env.active_mode[i + 1]) {
            const double m = env.breakpoints[bp++];
            const double a = ladder.eps(env.active_mode[i], m);
            const double b = ladder.eps(env.active_mode[i + 1], m);
            CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(a)));
        }
    }
    CHECK(bp == env.breakpoints.size());
}

TEST_CASE("A_k decreases far out") {
    for (const ModelParams& p : small_grid()) {
        CoeffLadder ladder(p);
        ladder.extend(1001);
        for (int k = 2; k <= 1000; ++k) {
            CHECK(ladder.A(k + 1) < ladder.A(k));
        }
    }
}

TEST_CASE("envelope rejects inconsistent grids") {
    const ModelParams p{3, 1.0, 4.0};
    CHECK_THROWS_AS(envelope(p, {0.5, 0.5, 16}), std::domain_error);
    CHECK_THROWS_AS(envelope(p, {-0.1, 0.5, 16}), std::domain_error);
    CHECK_THROWS_AS(envelope(p, {0.0, 0.5, 1}), std::domain_error);
}

TEST_CASE("near-threshold branches stay consistent") {
    const double bstar = beta_star(3, 1.0);
    const ModelParams p{3, 1.0, bstar * (1.0 + 1e-12)};
    const MStarResult res = m_star_checked(p);
    CHECK(res.near_threshold);
    CHECK(res.consistent);
    CHECK(res.branch1 == doctest::Approx(res.branch2).epsilon(1e-6));
}
