#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ballstab/spectrum.hpp"

namespace ballstab {

// One measured claim: residual against its tolerance plus a pass flag.
// For identities the residual is a relative deviation; for strict
// inequalities it is the worst violation margin (negative when satisfied).
struct CheckResult {
    std::string name;
    nlohmann::ordered_json params;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CheckReport {
    std::string suite;
    std::vector<CheckResult> tests;

    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
};

// The (d, alpha, beta) sweep used by the lemma checks: d in {2,3,4,6,8,10,12},
// alpha at {0.1, 0.5, 0.9} of d-1, beta in {0.5, 2, 8, 32, 128} plus points
// pinned on each side of beta_*(d, alpha).
std::vector<ModelParams> standard_grid();

// A small sub-sample for fast smoke runs.
std::vector<ModelParams> quick_grid();

// Numerical verification of the structural lemmas on each grid point:
// monotone A_k, the m_{2,3} = m_3^c identity, the mode-2/3 coefficient
// ratios, positivity of eta_k - sigma_k and of the Q certificate, and
// minimality of the first root.
CheckReport run_lemma_suite(const std::vector<ModelParams>& grid, int k_max = 1000);

// Brute-force cross-checks of the closed forms: surface quadrature vs the
// eigenvalue formulas, the curvature identity, and the interaction-energy
// quadrature vs exact values and Monte Carlo.
CheckReport run_oracle_suite(int order, long long mc_samples, std::uint64_t seed);

}  // namespace ballstab
