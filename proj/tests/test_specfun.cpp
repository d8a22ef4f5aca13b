#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ballstab/specfun.hpp"

using namespace ballstab;

namespace {
constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}
}  // namespace

TEST_CASE("log_gamma at exact points") {
    CHECK(std::fabs(log_gamma(1.0)) < 1e-14);
    CHECK(std::fabs(log_gamma(2.0)) < 1e-14);
    CHECK(rel_err(log_gamma(0.5), std::log(std::sqrt(kPi))) < 1e-14);
    CHECK(rel_err(log_gamma(10.0), std::log(362880.0)) < 1e-14);  // Gamma(10) = 9!
}

TEST_CASE("log_gamma matches the library implementation across [1e-3, 1e3]") {
    for (double x = 1e-3; x <= 1e3; x *= 1.37) {
        CHECK(rel_err(log_gamma(x), std::lgamma(x)) < 1e-13);
    }
}

TEST_CASE("log_gamma rejects bad arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("unit ball volumes") {
    CHECK(rel_err(unit_ball_volume(1), 2.0) < 1e-13);
    CHECK(rel_err(unit_ball_volume(2), kPi) < 1e-13);
    CHECK(rel_err(unit_ball_volume(3), 4.0 * kPi / 3.0) < 1e-13);
    // recurrence omega_n = omega_{n-2} * 2 pi / n
    for (int n = 3; n <= 14; ++n) {
        CHECK(rel_err(unit_ball_volume(n), unit_ball_volume(n - 2) * 2.0 * kPi / n) < 1e-12);
    }
    CHECK_THROWS_AS(unit_ball_volume(0), std::domain_error);
    CHECK_THROWS_AS(unit_ball_volume(-2), std::domain_error);
}

TEST_CASE("shift parameters and their validity window") {
    const ShiftParams s = make_shift_params(3, 1.0, 4.0);
    CHECK(s.ell == doctest::Approx(1.0));
    CHECK(s.t == doctest::Approx(0.5));
    CHECK(s.tau == doctest::Approx(3.0));
    CHECK(s.tau > s.ell);
    CHECK_THROWS_AS(make_shift_params(3, 2.0, 1.0), std::domain_error);   // alpha = d-1
    CHECK_THROWS_AS(make_shift_params(3, -0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_shift_params(3, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(make_shift_params(1, 0.1, 1.0), std::domain_error);
}

TEST_CASE("single-factor products at d=3, alpha=1, beta=4") {
    const ShiftParams s = make_shift_params(3, 1.0, 4.0);
    const TelescopeProducts p = telescope_products(2, s);
    CHECK(p.a.value() == doctest::Approx(1.5));
    CHECK(p.b.value() == doctest::Approx(2.5));
    CHECK(p.c.value() == doctest::Approx(-1.0));  // j=1: 1 + 1 - 3
    CHECK(p.c.sign == -1);
    CHECK(p.d.value() == doctest::Approx(5.0));   // j=1: 1 + 1 + 3
}

TEST_CASE("third products reproduce the telescoping differences") {
    // b_3 - a_3 = (d+2)(d-1-alpha) and d_3 - c_3 = (d+2)(d-1+beta)
    for (int d : {2, 3, 5, 8, 12}) {
        for (double fa : {0.2, 0.5, 0.8}) {
            const double alpha = fa * (d - 1);
            for (double beta : {0.5, 4.0, 17.0}) {
                const ShiftParams s = make_shift_params(d, alpha, beta);
                const TelescopeProducts p = telescope_products(3, s);
                CHECK(p.b.value() - p.a.value() ==
                      doctest::Approx((d + 2.0) * (d - 1.0 - alpha)).epsilon(1e-12));
                CHECK(p.d.value() - p.c.value() ==
                      doctest::Approx((d + 2.0) * (d - 1.0 + beta)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("zero factor is representable") {
    // beta = 2 makes tau - ell = 1, so the j=1 factor of c vanishes.
    const ShiftParams s = make_shift_params(3, 1.0, 2.0);
    const TelescopeProducts p = telescope_products(3, s);
    CHECK(p.c.sign == 0);
    CHECK(p.c.value() == 0.0);
}

TEST_CASE("recurrence consistency up to k = 200") {
    const ShiftParams s = make_shift_params(4, 1.2, 3.3);
    TelescopeProducts prev = telescope_products(2, s, ProductPath::LogSpace);
    for (int k = 2; k < 200; ++k) {
        const TelescopeProducts next = telescope_products(k + 1, s, ProductPath::LogSpace);
        const double fa = std::exp(next.a.log_abs - prev.a.log_abs);
        const double fb = std::exp(next.b.log_abs - prev.b.log_abs);
        const double fd = std::exp(next.d.log_abs - prev.d.log_abs);
        CHECK(fa == doctest::Approx(k + s.ell - s.t).epsilon(1e-12));
        CHECK(fb == doctest::Approx(k + s.ell + s.t).epsilon(1e-12));
        CHECK(fd == doctest::Approx(k + s.ell + s.tau).epsilon(1e-12));
        // c may change sign; compare signed factor through values for small k
        if (k <= 64) {
            const double fc = next.c.value() / prev.c.value();
            CHECK(fc == doctest::Approx(k + s.ell - s.tau).epsilon(1e-12));
        }
        prev = next;
    }
}

TEST_CASE("a_k/b_k lies in (0,1) and decreases") {
    const ShiftParams s = make_shift_params(5, 2.0, 1.0);
    double prev_ratio = 1.0;
    for (int k = 2; k <= 120; ++k) {
        const TelescopeProducts p = telescope_products(k, s, ProductPath::LogSpace);
        const double ratio = std::exp(p.a.log_abs - p.b.log_abs);
        CHECK(ratio > 0.0);
        CHECK(ratio < 1.0);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
}

TEST_CASE("direct and log-space paths agree for k <= 64") {
    const ShiftParams s = make_shift_params(6, 2.5, 7.0);
    for (int k = 2; k <= 64; ++k) {
        const TelescopeProducts direct = telescope_products(k, s, ProductPath::Direct);
        const TelescopeProducts logp = telescope_products(k, s, ProductPath::LogSpace);
        for (auto pick : {+[](const TelescopeProducts& t) { return t.a; },
                          +[](const TelescopeProducts& t) { return t.b; },
                          +[](const TelescopeProducts& t) { return t.c; },
                          +[](const TelescopeProducts& t) { return t.d; }}) {
            const SignedLog x = pick(direct);
            const SignedLog y = pick(logp);
            CHECK(x.sign == y.sign);
            if (x.sign != 0) {
                CHECK(std::fabs(x.value() - y.value()) <= 1e-12 * std::fabs(x.value()));
            }
        }
    }
}

TEST_CASE("telescope_products rejects k < 2") {
    const ShiftParams s = make_shift_params(3, 1.0, 4.0);
    CHECK_THROWS_AS(telescope_products(1, s), std::domain_error);
}
