#include "ballstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ballstab/conjectures.hpp"
#include "ballstab/curves.hpp"
#include "ballstab/oracle.hpp"
#include "ballstab/specfun.hpp"
#include "ballstab/version.hpp"

namespace ballstab {

bool CheckReport::all_pass() const {
    return std::all_of(tests.begin(), tests.end(), [](const CheckResult& t) { return t.pass; });
}

nlohmann::ordered_json CheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["generated_with_version"] = kVersion;
    j["tests"] = nlohmann::ordered_json::array();
    for (const auto& t : tests) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["params"] = t.params;
        jt["residual"] = t.residual;
        jt["tolerance"] = t.tolerance;
        jt["pass"] = t.pass;
        j["tests"].push_back(jt);
    }
    return j;
}

std::vector<ModelParams> standard_grid() {
    std::vector<ModelParams> grid;
    for (int d : {2, 3, 4, 6, 8, 10, 12}) {
        for (double frac : {0.1, 0.5, 0.9}) {
            const double alpha = frac * (d - 1);
            const double bstar = beta_star(d, alpha);
            std::vector<double> betas = {0.5, 2.0, 8.0, 32.0, 128.0};
            // Pin one point on each side of the threshold.
            betas.push_back(0.8 * bstar);
            betas.push_back(1.25 * bstar);
            for (double beta : betas) {
                grid.push_back({d, alpha, beta});
            }
        }
    }
    return grid;
}

std::vector<ModelParams> quick_grid() {
    return {
        {3, 1.0, 4.0},  {3, 1.0, 30.0}, {6, 3.0, 30.0},
        {12, 9.0, 4.0}, {2, 0.5, 2.0},  {10, 8.0, 130.0},
    };
}

namespace {

nlohmann::ordered_json params_json(const ModelParams& p) {
    nlohmann::ordered_json j;
    j["d"] = p.d;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    return j;
}

}  // namespace

CheckReport run_lemma_suite(const std::vector<ModelParams>& grid, int k_max) {
    CheckReport rep;
    rep.suite = "lemmas";
    for (const ModelParams& p : grid) {
        const auto pj = params_json(p);
        CoeffLadder ladder(p);
        ladder.extend(k_max + 1);

        // (A_k) strictly decreasing up to k_max.
        {
            double worst = -std::numeric_limits<double>::infinity();
            for (int k = 2; k < k_max; ++k) {
                worst = std::max(worst, (ladder.A(k + 1) - ladder.A(k)) / ladder.A(2));
            }
            rep.tests.push_back({"A_k_strictly_decreasing", pj, worst, 0.0, worst < 0.0});
        }

        // m_{2,3} = m_3^c.
        {
            const auto m23 = intersection(2, 3, p);
            const CurveLandmarks lm3 = landmarks(3, p);
            double resid = std::numeric_limits<double>::infinity();
            if (m23) resid = std::fabs(*m23 - lm3.crit) / lm3.crit;
            rep.tests.push_back({"m23_equals_m3c", pj, resid, 1e-10, resid <= 1e-10});
        }

        // Mode-2/3 coefficient ratio identities.
        {
            const double lhs_a = (ladder.A(3) - ladder.A(2)) / ladder.A(3);
            const double rhs_a = -(p.d + 1.0 - p.alpha) / (p.d + 1.0);
            const double res_a = std::fabs(lhs_a - rhs_a) / std::fabs(rhs_a);
            rep.tests.push_back({"A_ratio_identity", pj, res_a, 1e-10, res_a <= 1e-10});

            const double lhs_b = (ladder.B(3) - ladder.B(2)) / ladder.B(3);
            const double rhs_b = -(p.d + 1.0 + p.beta) / (p.d + 1.0);
            const double res_b = std::fabs(lhs_b - rhs_b) / std::fabs(rhs_b);
            rep.tests.push_back({"B_ratio_identity", pj, res_b, 1e-10, res_b <= 1e-10});
        }

        // eta_k - sigma_k > 0 and Q(k) > 0 (depend on d, alpha only).
        {
            double worst_es = std::numeric_limits<double>::infinity();
            double worst_q = std::numeric_limits<double>::infinity();
            for (int k = 2; k <= k_max; ++k) {
                const EtaSigma es = eta_sigma_seq(k, p.d, p.alpha);
                worst_es = std::min(worst_es, es.eta - es.sigma);
                worst_q = std::min(worst_q, q_polynomial(k, p.d, p.alpha));
            }
            rep.tests.push_back(
                {"eta_minus_sigma_positive", pj, -worst_es, 0.0, worst_es > 0.0});
            rep.tests.push_back({"Q_positive", pj, -worst_q, 0.0, worst_q > 0.0});
        }

        // m_2^0 is the smallest root.
        {
            const double m20 = ladder.root(2);
            double worst = -std::numeric_limits<double>::infinity();
            for (int k = 3; k <= k_max; ++k) {
                worst = std::max(worst, (m20 - ladder.root(k)) / m20);
            }
            rep.tests.push_back({"m20_is_min_root", pj, worst, 1e-12, worst <= 1e-12});
        }
    }
    return rep;
}

CheckReport run_oracle_suite(int order, long long mc_samples, std::uint64_t seed) {
    CheckReport rep;
    rep.suite = "oracle";

    // Quadrature vs closed form for a sample of modes and kernel exponents.
    for (int d : {2, 3}) {
        const double alpha = d == 2 ? 0.5 : 1.0;
        for (double sigma : {-alpha, 4.0, 30.0}) {
            double worst = 0.0;
            for (int k = 1; k <= 6; ++k) {
                const double want = mu_k(k, sigma, d);
                const double got = oracle::mu_oracle(k, sigma, d, order);
                worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
            }
            nlohmann::ordered_json pj;
            pj["d"] = d;
            pj["sigma"] = sigma;
            pj["order"] = order;
            rep.tests.push_back({"mu_oracle_agreement", pj, worst, 2e-5, worst <= 2e-5});
        }
        {
            double worst = 0.0;
            for (int k = 1; k <= 6; ++k) {
                const double want = lambda_k(k, d);
                const double got = oracle::lambda_oracle(k, d, order);
                worst = std::max(worst, std::fabs(got - want) / want);
            }
            nlohmann::ordered_json pj;
            pj["d"] = d;
            pj["order"] = order;
            rep.tests.push_back({"lambda_oracle_agreement", pj, worst, 1e-8, worst <= 1e-8});
        }
        {
            double worst = 0.0;
            for (double sigma : {-0.5, 0.5, 2.0, 7.0}) {
                const double want = nonlocal_curvature(sigma, d);
                const double got = oracle::c2_oracle(sigma, d, order);
                worst = std::max(worst, std::fabs(got - want) / want);
            }
            nlohmann::ordered_json pj;
            pj["d"] = d;
            pj["order"] = order;
            rep.tests.push_back({"mu1_equals_c2", pj, worst, 1e-6, worst <= 1e-6});
        }
    }

    // J_0(B_1) = omega_d^2.
    {
        double worst = 0.0;
        for (int d = 2; d <= 12; ++d) {
            const double want = unit_ball_volume(d) * unit_ball_volume(d);
            const double got = interaction_energy_ball(0.0, d);
            worst = std::max(worst, std::fabs(got - want) / want);
        }
        nlohmann::ordered_json pj;
        pj["d"] = "2..12";
        rep.tests.push_back({"interaction_energy_constant_kernel", pj, worst, 1e-9, worst <= 1e-9});
    }

    // Monte Carlo vs quadrature at a singular exponent.
    {
        const auto mc = oracle::interaction_mc(-1.0, 3, mc_samples, seed);
        const double want = interaction_energy_ball(-1.0, 3);
        const double resid = std::fabs(mc.estimate - want);
        const double tol = 3.0 * mc.std_error;
        nlohmann::ordered_json pj;
        pj["d"] = 3;
        pj["sigma"] = -1.0;
        pj["samples"] = mc_samples;
        pj["seed"] = seed;
        pj["generator"] = mc.generator;
        rep.tests.push_back({"interaction_mc_vs_quadrature", pj, resid, tol, resid <= tol});
    }
    return rep;
}

}  // namespace ballstab
