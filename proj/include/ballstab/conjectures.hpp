#pragma once

#include <vector>

#include "ballstab/curves.hpp"
#include "ballstab/spectrum.hpp"

namespace ballstab {

// Lambda_k = (d+beta+1) A_k/A_{k+1} - (d-alpha+1) B_k/B_{k+1} - (alpha+beta).
// Its positivity matters only when the curves k and k+1 actually intersect,
// which requires B_{k+1} < B_k; `applicable` records that.
struct LambdaSeqValue {
    double value = 0.0;
    bool applicable = true;
};

LambdaSeqValue lambda_seq(int k, const ModelParams& params);

// eta_k = ((2k+d-1)/(k-1)) (b_k/a_k - 1) and sigma_k = 2t(k+d-1)/(k+ell+t);
// eta_k - sigma_k > 0 is equivalent to A_k > A_{k+1}.
struct EtaSigma {
    double eta = 0.0;
    double sigma = 0.0;
};

EtaSigma eta_sigma_seq(int k, int d, double alpha);

// The quadratic-in-k certificate from the monotonicity induction, evaluated
// from its three-term definition.
double q_polynomial(int k, int d, double alpha);

// Expanded coefficients a k^2 + b k + c of the same quadratic; c is
// reconstructed as the three-term form at k = 0.
struct QPolyCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

QPolyCoeffs q_polynomial_coeffs(int d, double alpha);

struct CascadeSegment {
    double m_lo = 0.0;
    double m_hi = 0.0;
    int active_k = 2;
};

// Decomposition of the stability boundary into maximal intervals on which a
// single curve eps_k is the supremum. For beta below the threshold the full
// decomposition is infinite; the report stops once the active mode would
// exceed k_max and flags the truncation.
struct CascadeReport {
    ModelParams params;
    std::vector<CascadeSegment> segments;
    std::vector<int> skipped_modes;    // gaps in [2, max active mode]
    std::vector<double> mbar_points;   // interior switch points
    bool converges_to_mstar = false;   // last segment reaches within 5% of m_*
    bool truncated = false;            // stopped at k_max before reaching m_*
    bool coarse_grid = false;          // some segment narrower than the grid step
    double m_star = 0.0;
    int k_max = 0;
};

CascadeReport cascade(const ModelParams& params, int k_max, int grid_points);

}  // namespace ballstab
