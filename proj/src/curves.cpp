#include "ballstab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ballstab {

namespace {

constexpr double kTailSlack = 1e-14;  // additive slack in the truncation test
constexpr int kModeCap = 1 << 18;     // hard cap on explored modes

double lambda_gap(int k, int d) {
    // lambda_k - lambda_1 = (k-1)(k+d-1)
    return (k - 1.0) * (k + d - 1.0);
}

}  // namespace

CoeffLadder::CoeffLadder(const ModelParams& params) : params_(params) {
    params_.validate();
    const int d = params_.d;
    r_ = (d - params_.alpha + 1.0) / d;
    q_ = (params_.alpha + params_.beta) / d;
    pref_a_ = mu_prefactor(-params_.alpha, d);
    pref_b_ = mu_prefactor(params_.beta, d);
    // kappa_sigma = prefactor * |Pi_1(sigma)|; also the k -> infinity limit of
    // the numerators mu_k(-alpha) - mu_1(-alpha) and mu_1(beta) - mu_k(beta).
    kappa_a_ = pref_a_ * (0.5 * params_.alpha) / (d - 1.0 - 0.5 * params_.alpha);
    kappa_b_ = pref_b_ * (0.5 * params_.beta) / (d - 1.0 + 0.5 * params_.beta);
    // Running products start at k = 1: Pi_1 = factor at j = 0.
    pi_a_ = (0.5 * params_.alpha) / (d - 1.0 - 0.5 * params_.alpha);
    pi_b_ = (-0.5 * params_.beta) / (d - 1.0 + 0.5 * params_.beta);
    k_last_ = 1;
    A_.assign(2, 0.0);
    B_.assign(2, 0.0);
    abs_pi_b_.assign(2, 0.0);
    abs_pi_b_[1] = std::fabs(pi_b_);
}

void CoeffLadder::extend(int k_hi) {
    if (k_hi <= k_last_) return;
    const int d = params_.d;
    const double pi_a1 = (0.5 * params_.alpha) / (d - 1.0 - 0.5 * params_.alpha);
    const double pi_b1 = (-0.5 * params_.beta) / (d - 1.0 + 0.5 * params_.beta);
    A_.resize(k_hi + 1);
    B_.resize(k_hi + 1);
    abs_pi_b_.resize(k_hi + 1);
    for (int k = k_last_ + 1; k <= k_hi; ++k) {
        const int j = k - 1;
        pi_a_ *= (j + 0.5 * params_.alpha) / (j + d - 1.0 - 0.5 * params_.alpha);
        pi_b_ *= (j - 0.5 * params_.beta) / (j + d - 1.0 + 0.5 * params_.beta);
        const double gap = lambda_gap(k, d);
        A_[k] = pref_a_ * (pi_a1 - pi_a_) / gap;
        B_[k] = pref_b_ * (pi_b_ - pi_b1) / gap;
        abs_pi_b_[k] = std::fabs(pi_b_);
    }
    k_last_ = k_hi;
}

double CoeffLadder::eps(int k, double m) const {
    if (k == 1) return 0.0;
    return std::pow(m, r_) * (A_[k] - B_[k] * std::pow(m, q_));
}

double CoeffLadder::root(int k) const { return std::pow(A_[k] / B_[k], 1.0 / q_); }

double CoeffLadder::tail_bound(int k, double m_r, double m_q) const {
    const double kappa_b_eff = kappa_b_ - pref_b_ * abs_pi_b_[k + 1];
    const double numer = kappa_a_ - kappa_b_eff * m_q;
    if (numer <= 0.0) return 0.0;  // every unexplored mode is nonpositive here
    return m_r * numer / (static_cast<double>(k) * (k + params_.d));
}

CurveCoeffs curve_coeffs(int k, const ModelParams& params) {
    if (k < 2) {
        throw std::domain_error("curve_coeffs: mode index must be >= 2");
    }
    CoeffLadder ladder(params);
    ladder.extend(k);
    CurveCoeffs c;
    c.k = k;
    c.A = ladder.A(k);
    c.B = ladder.B(k);
    c.r = ladder.r();
    c.q = ladder.q();
    return c;
}

double eps_k(int k, double m, const ModelParams& params) {
    params.validate();
    if (k <= 0) {
        throw std::domain_error("eps_k: mode 0 is excluded by the volume constraint, need k >= 1");
    }
    if (!(m >= 0.0)) {
        throw std::domain_error("eps_k: mass parameter must be >= 0");
    }
    if (k == 1) return 0.0;
    const CurveCoeffs c = curve_coeffs(k, params);
    return std::pow(m, c.r) * (c.A - c.B * std::pow(m, c.q));
}

CurveLandmarks landmarks(int k, const ModelParams& params) {
    const CurveCoeffs c = curve_coeffs(k, params);
    CurveLandmarks lm;
    lm.root = std::pow(c.A / c.B, 1.0 / c.q);
    lm.crit = std::pow(c.r * c.A / ((c.r + c.q) * c.B), 1.0 / c.q);
    lm.peak = std::pow(c.r * c.A / ((c.r + c.q) * c.B), c.r / c.q) * (c.q * c.A / (c.r + c.q));
    if (params.alpha < 1.0) {
        lm.inflection = std::pow((1.0 - params.alpha) / (1.0 + params.beta), 1.0 / c.q) * lm.crit;
    }
    return lm;
}

std::optional<double> intersection(int k, int l, const ModelParams& params) {
    if (k == l || k < 2 || l < 2) {
        throw std::domain_error("intersection: need distinct mode indices >= 2");
    }
    CoeffLadder ladder(params);
    ladder.extend(std::max(k, l));
    const double dA = ladder.A(k) - ladder.A(l);
    const double dB = ladder.B(k) - ladder.B(l);
    if (dB == 0.0) return std::nullopt;
    const double ratio = dA / dB;
    if (!(ratio > 0.0)) return std::nullopt;
    return std::pow(ratio, 1.0 / ladder.q());
}

double beta_star(int d, double alpha) {
    if (d < 2) {
        throw std::domain_error("beta_star: dimension must be >= 2");
    }
    if (!(alpha > 0.0) || !(alpha < d - 1.0)) {
        throw std::domain_error("beta_star: alpha must satisfy 0 < alpha < d-1, the formula has a pole at alpha = d-1");
    }
    return (6.0 * d + 2.0 + alpha * (d - 1.0)) / (d - 1.0 - alpha);
}

MStarResult m_star_checked(const ModelParams& params) {
    params.validate();
    const int d = params.d;
    const double a = params.alpha;
    const double b = params.beta;
    const double bstar = beta_star(d, a);
    const double j_ratio =
        interaction_energy_ball(-a, d) / interaction_energy_ball(b, d);
    const double exp_ = d / (a + b);

    MStarResult res;
    res.branch1 = std::pow(
        a * (d - a) * (2.0 * d + 2.0 + b) / (b * (d + b) * (2.0 * d + 2.0 - a)) * j_ratio, exp_);
    res.branch2 = std::pow(a * (d - a) * (2.0 * d - a) * (d - 1.0 + b) /
                               (b * (d + b) * (2.0 * d + b) * (d - 1.0 - a)) * j_ratio,
                           exp_);
    res.branch = (b >= bstar) ? 1 : 2;
    res.value = (res.branch == 1) ? res.branch1 : res.branch2;
    res.near_threshold = std::fabs(b - bstar) <= 1e-9 * std::max(1.0, bstar);
    if (res.near_threshold) {
        res.consistent =
            std::fabs(res.branch1 - res.branch2) <= 1e-6 * std::max(res.branch1, res.branch2);
    }
    return res;
}

double m_star(const ModelParams& params) { return m_star_checked(params).value; }

namespace {

struct PointState {
    double m = 0.0;
    double m_r = 0.0;
    double m_q = 0.0;
    double best = 0.0;  // running max over eps_1 = 0 and explored modes
    int arg = 1;
    bool settled = false;
};

// Scans modes [k_from, k_to] for one point; returns true once the tail
// certificate closes. Updates best/arg in place.
bool scan_point(PointState& st, const CoeffLadder& ladder, int k_from, int k_to) {
    for (int k = k_from; k <= k_to; ++k) {
        const double e = st.m_r * (ladder.A(k) - ladder.B(k) * st.m_q);
        if (e > st.best) {
            st.best = e;
            st.arg = k;
        }
        if (ladder.tail_bound(k, st.m_r, st.m_q) <= st.best + kTailSlack) {
            return true;
        }
    }
    return false;
}

// Bisection for the mode change between k_lo (active on the left) and k_hi
// (active on the right); eps of mode 1 is identically zero.
double refine_breakpoint(const CoeffLadder& ladder, int k_left, int k_right, double lo, double hi) {
    auto diff = [&](double m) { return ladder.eps(k_right, m) - ladder.eps(k_left, m); };
    double f_lo = diff(lo);
    double f_hi = diff(hi);
    if (f_lo > 0.0) return lo;
    if (f_hi < 0.0) return hi;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (diff(mid) >= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Envelope envelope(const ModelParams& params, const GridSpec& grid) {
    params.validate();
    if (!(grid.m_min >= 0.0) || !(grid.m_max > grid.m_min) || grid.n_points < 2) {
        throw std::domain_error(
            "envelope: grid spec requires 0 <= m_min < m_max and n_points >= 2");
    }

    CoeffLadder ladder(params);
    const double r = ladder.r();
    const double q = ladder.q();

    const int n = grid.n_points;
    std::vector<PointState> pts(n);
    const double step = (grid.m_max - grid.m_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double m = grid.m_min + step * i;
        pts[i].m = m;
        pts[i].m_r = std::pow(m, r);
        pts[i].m_q = std::pow(m, q);
    }

    int k_hi = 64;
    int k_done = 1;
    bool all_settled = false;
    int k_needed = 2;
    while (!all_settled) {
        ladder.extend(k_hi + 1);
        all_settled = true;
        for (auto& st : pts) {
            if (st.settled) continue;
            if (scan_point(st, ladder, k_done + 1, k_hi)) {
                st.settled = true;
            } else {
                all_settled = false;
            }
        }
        k_done = k_hi;
        if (!all_settled) {
            if (k_hi >= kModeCap) break;
            k_hi = std::min(2 * k_hi, kModeCap);
        }
    }

    Envelope env;
    env.grid.resize(n);
    env.values.resize(n);
    env.active_mode.resize(n);
    env.certified = all_settled;
    for (int i = 0; i < n; ++i) {
        env.grid[i] = pts[i].m;
        env.values[i] = std::max(pts[i].best, 0.0);
        env.active_mode[i] = pts[i].best > 0.0 ? pts[i].arg : 1;
        k_needed = std::max(k_needed, pts[i].arg);
    }
    env.k_truncation = k_needed;
    env.m_star = m_star(params);

    for (int i = 0; i + 1 < n; ++i) {
        if (env.active_mode[i] != env.active_mode[i + 1]) {
            env.breakpoints.push_back(refine_breakpoint(ladder, env.active_mode[i],
                                                        env.active_mode[i + 1], env.grid[i],
                                                        env.grid[i + 1]));
        }
    }
    return env;
}

EnvelopeValue envelope_at(double m, const ModelParams& params) {
    params.validate();
    if (!(m >= 0.0)) {
        throw std::domain_error("envelope_at: mass parameter must be >= 0");
    }
    CoeffLadder ladder(params);
    PointState st;
    st.m = m;
    st.m_r = std::pow(m, ladder.r());
    st.m_q = std::pow(m, ladder.q());

    EnvelopeValue out;
    int k_done = 1;
    int k_hi = 64;
    while (true) {
        ladder.extend(k_hi + 1);
        if (scan_point(st, ladder, k_done + 1, k_hi)) {
            out.certified = true;
            break;
        }
        k_done = k_hi;
        if (k_hi >= kModeCap) {
            out.certified = false;
            break;
        }
        k_hi = std::min(2 * k_hi, kModeCap);
    }
    out.value = std::max(st.best, 0.0);
    out.active_k = st.best > 0.0 ? st.arg : 1;
    out.k_explored = ladder.max_k();
    return out;
}

}  // namespace ballstab
