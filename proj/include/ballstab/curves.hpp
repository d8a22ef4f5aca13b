#pragma once

#include <optional>
#include <vector>

#include "ballstab/spectrum.hpp"

namespace ballstab {

// Coefficients of the threshold curve eps_k(m) = m^r (A_k - B_k m^q).
struct CurveCoeffs {
    int k = 2;
    double A = 0.0;  // (mu_k(-alpha) - mu_1(-alpha)) / (lambda_k - lambda_1)
    double B = 0.0;  // (mu_1(beta) - mu_k(beta)) / (lambda_k - lambda_1)
    double r = 0.0;  // (d - alpha + 1) / d
    double q = 0.0;  // (alpha + beta) / d
};

// Structural points of one curve: positive root, critical point, peak value,
// and the inflection point (present only when alpha < 1).
struct CurveLandmarks {
    double root = 0.0;   // m_k^0 = (A_k / B_k)^{1/q}
    double crit = 0.0;   // m_k^c = (r A_k / ((r+q) B_k))^{1/q}
    double peak = 0.0;   // eps_k(m_k^c)
    std::optional<double> inflection;
};

// Incremental generator of (A_k, B_k) with the tail data needed to certify
// truncations of sup_k eps_k(m). Extending from k to k+1 costs O(1):
// the bracket products gain one factor each.
class CoeffLadder {
   public:
    explicit CoeffLadder(const ModelParams& params);

    void extend(int k_hi);
    int max_k() const { return k_last_; }

    double A(int k) const { return A_[k]; }
    double B(int k) const { return B_[k]; }
    double abs_pi_beta(int k) const { return abs_pi_b_[k]; }

    double r() const { return r_; }
    double q() const { return q_; }
    double kappa_alpha() const { return kappa_a_; }
    double kappa_beta() const { return kappa_b_; }
    double pref_beta() const { return pref_b_; }

    // eps_k(m) with the convention eps_1 = 0; needs k <= max_k().
    double eps(int k, double m) const;
    double root(int k) const;  // m_k^0

    // Certified upper bound on sup_{j > k} eps_j(m), given m^r and m^q.
    // Uses mu_j(-alpha) < lim mu(-alpha) and mu_j(beta) within
    // pref_beta * |Pi_{k+1}(beta)| of its limit for every j > k.
    double tail_bound(int k, double m_r, double m_q) const;

    const ModelParams& params() const { return params_; }

   private:
    ModelParams params_;
    double r_ = 0.0, q_ = 0.0;
    double pref_a_ = 0.0, pref_b_ = 0.0;
    double kappa_a_ = 0.0, kappa_b_ = 0.0;
    double pi_a_ = 1.0, pi_b_ = 1.0;  // running bracket products at k_last_
    int k_last_ = 1;
    std::vector<double> A_, B_, abs_pi_b_;  // indexed by k, entries 0..1 unused
};

CurveCoeffs curve_coeffs(int k, const ModelParams& params);

// eps_k(m); k = 1 returns 0 by convention, k = 0 is rejected (the volume
// constraint removes mode zero).
double eps_k(int k, double m, const ModelParams& params);

CurveLandmarks landmarks(int k, const ModelParams& params);

// Nonzero intersection point m_{k,l} of eps_k and eps_l, if any.
std::optional<double> intersection(int k, int l, const ModelParams& params);

// beta_*(d, alpha) = (6d + 2 + alpha(d-1)) / (d - 1 - alpha).
double beta_star(int d, double alpha);

struct MStarResult {
    double value = 0.0;
    int branch = 0;              // 1 for beta >= beta_*, 2 otherwise
    double branch1 = 0.0;        // high-beta closed form
    double branch2 = 0.0;        // low-beta closed form
    bool near_threshold = false; // |beta - beta_*| within 1e-9 relative
    bool consistent = true;      // branches agree to 1e-6 when near threshold
};

// Mass threshold m_*(d, alpha, beta) past which the ball is stable for every
// eps >= 0. Both closed-form branches share the interaction-energy ratio
// J_{-alpha}(B_1) / J_beta(B_1), evaluated by quadrature.
MStarResult m_star_checked(const ModelParams& params);
double m_star(const ModelParams& params);

struct GridSpec {
    double m_min = 0.0;
    double m_max = 1.0;
    int n_points = 1024;
};

// The stability boundary eps(m) = sup_k eps_k(m) sampled on a grid.
struct Envelope {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<int> active_mode;     // maximizing k; 1 where the sup is 0
    std::vector<double> breakpoints;  // m-values where active_mode changes
    double m_star = 0.0;
    int k_truncation = 0;  // highest mode the sup actually needed
    bool certified = true; // every grid point settled by the tail bound
};

Envelope envelope(const ModelParams& params, const GridSpec& grid);

// Single-point evaluation of eps(m) with the same truncation certificate.
struct EnvelopeValue {
    double value = 0.0;
    int active_k = 1;
    int k_explored = 0;
    bool certified = true;
};

EnvelopeValue envelope_at(double m, const ModelParams& params);

}  // namespace ballstab
