#include "ballstab/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ballstab/specfun.hpp"

namespace ballstab {

LambdaSeqValue lambda_seq(int k, const ModelParams& params) {
    params.validate();
    if (k < 3) {
        throw std::domain_error("lambda_seq: defined for k >= 3");
    }
    CoeffLadder ladder(params);
    ladder.extend(k + 1);
    const int d = params.d;
    LambdaSeqValue out;
    out.value = (d + params.beta + 1.0) * ladder.A(k) / ladder.A(k + 1) -
                (d - params.alpha + 1.0) * ladder.B(k) / ladder.B(k + 1) -
                (params.alpha + params.beta);
    out.applicable = ladder.B(k + 1) < ladder.B(k);
    return out;
}

EtaSigma eta_sigma_seq(int k, int d, double alpha) {
    if (k < 2) {
        throw std::domain_error("eta_sigma_seq: defined for k >= 2");
    }
    const ShiftParams s = make_shift_params(d, alpha, 1.0);  // tau unused here
    // b_k / a_k as a running product of O(1) factor ratios.
    double ratio = 1.0;
    for (int j = 1; j <= k - 1; ++j) {
        ratio *= (j + s.ell + s.t) / (j + s.ell - s.t);
    }
    EtaSigma out;
    out.eta = (2.0 * k + d - 1.0) / (k - 1.0) * (ratio - 1.0);
    out.sigma = 2.0 * s.t * (k + d - 1.0) / (k + s.ell + s.t);
    return out;
}

double q_polynomial(int k, int d, double alpha) {
    if (k < 0) {
        throw std::domain_error("q_polynomial: k must be >= 0");
    }
    const ShiftParams s = make_shift_params(d, alpha, 1.0);
    const double kk = k;
    return (1.0 + s.ell - s.t) * (2.0 * kk + d - 1.0) * (2.0 * kk + d + 1.0) +
           (2.0 * kk + d + 1.0) * (kk + s.ell + s.t) * (d + 3.0) * (kk - 1.0) -
           (2.0 * kk + d - 1.0) * (kk + s.ell - s.t) * (d + 3.0) * kk;
}

QPolyCoeffs q_polynomial_coeffs(int d, double alpha) {
    const ShiftParams s = make_shift_params(d, alpha, 1.0);
    QPolyCoeffs c;
    c.a = 4.0 * (1.0 + s.ell + 2.0 * s.t + s.t * d);
    c.b = 4.0 * d * (1.0 + s.ell - s.t) + (d + 3.0) * (2.0 * s.t * (d - 1.0) - d - 1.0);
    c.c = q_polynomial(0, d, alpha);
    return c;
}

namespace {

// One step of the supremum chase: given the current leading mode k over
// (m_lo, .), find the first m > m_lo where some other curve overtakes it.
// Curves intersect pairwise at most once away from the origin, and a curve
// below the leader can only overtake from a strictly larger index, so the
// candidate set is k+1..k_search.
struct ChaseStep {
    bool found = false;
    int next_k = 0;
    double m = 0.0;
};

ChaseStep next_switch(const CoeffLadder& ladder, int k, double m_lo, int k_search) {
    ChaseStep best;
    best.m = std::numeric_limits<double>::infinity();
    for (int j = k + 1; j <= k_search; ++j) {
        const double dA = ladder.A(k) - ladder.A(j);  // > 0, A decreasing
        const double dB = ladder.B(k) - ladder.B(j);
        if (!(dB > 0.0)) continue;  // eps_j stays below eps_k for all m
        const double m_x = std::pow(dA / dB, 1.0 / ladder.q());
        if (m_x <= m_lo * (1.0 + 1e-13)) continue;
        if (m_x < best.m * (1.0 - 1e-13)) {
            best.found = true;
            best.next_k = j;
            best.m = m_x;
        } else if (best.found && m_x <= best.m * (1.0 + 1e-13)) {
            // Near-coincident crossings: keep the curve that leads just past
            // the intersection (larger derivative wins).
            const double h = best.m * 1e-7;
            if (ladder.eps(j, best.m + h) > ladder.eps(best.next_k, best.m + h)) {
                best.next_k = j;
                best.m = m_x;
            }
        }
    }
    return best;
}

}  // namespace

CascadeReport cascade(const ModelParams& params, int k_max, int grid_points) {
    params.validate();
    if (k_max < 8) {
        throw std::domain_error("cascade: k_max must be >= 8");
    }
    if (grid_points < 2) {
        throw std::domain_error("cascade: grid_points must be >= 2");
    }

    CascadeReport rep;
    rep.params = params;
    rep.k_max = k_max;
    rep.m_star = m_star(params);

    CoeffLadder ladder(params);
    // Search window beyond k_max so that a mode above the reporting cap is
    // still detected (it terminates the report instead of corrupting it).
    int k_search = std::max(4 * k_max, 256);
    ladder.extend(k_search + 1);

    int current = 2;
    double m_lo = 0.0;
    std::vector<int> visited;
    while (true) {
        ChaseStep step = next_switch(ladder, current, m_lo, k_search);
        const double root = ladder.root(current);
        if (step.found && step.m < root) {
            // Guard against a window that is too small: if the overtaking
            // mode sits at the edge of the search window, widen and retry.
            if (step.next_k > k_search - 2 && k_search < (1 << 17)) {
                k_search *= 2;
                ladder.extend(k_search + 1);
                continue;
            }
            rep.segments.push_back({m_lo, step.m, current});
            visited.push_back(current);
            rep.mbar_points.push_back(step.m);
            if (step.next_k > k_max) {
                rep.truncated = true;
                break;
            }
            current = step.next_k;
            m_lo = step.m;
        } else {
            if (root < rep.m_star * (1.0 - 1e-6) && k_search < (1 << 17)) {
                // The boundary cannot vanish strictly before m_*; the
                // overtaking mode must lie beyond the search window.
                k_search *= 2;
                ladder.extend(k_search + 1);
                continue;
            }
            // No overtaker before the root: the boundary falls to zero here.
            rep.segments.push_back({m_lo, root, current});
            visited.push_back(current);
            break;
        }
    }

    const int max_active = *std::max_element(visited.begin(), visited.end());
    std::set<int> seen(visited.begin(), visited.end());
    for (int k = 2; k <= max_active; ++k) {
        if (!seen.count(k)) rep.skipped_modes.push_back(k);
    }

    const double last_hi = rep.segments.back().m_hi;
    rep.converges_to_mstar = (rep.m_star - last_hi) <= 0.05 * rep.m_star;

    // Grid diagnostic: a segment narrower than the sampling step cannot be
    // separated by the requested grid.
    const double step_m = rep.m_star / (grid_points - 1);
    for (const auto& s : rep.segments) {
        if (s.m_hi - s.m_lo < step_m) {
            rep.coarse_grid = true;
            break;
        }
    }
    return rep;
}

}  // namespace ballstab
