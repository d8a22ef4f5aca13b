#include "ballstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ballstab {

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Unstable: return "Unstable";
        case Stability::Marginal: return "Marginal";
    }
    return "?";
}

double quadratic_form(double eps, double m, const FourierPerturbation& u,
                      const ModelParams& params) {
    params.validate();
    if (!(eps >= 0.0) || !(m > 0.0)) {
        throw std::domain_error("quadratic_form: need eps >= 0 and m > 0");
    }
    int k_max = 1;
    for (const auto& e : u.entries) {
        if (e.k < 0) {
            throw std::domain_error("quadratic_form: mode index must be >= 0");
        }
        if (e.k == 0 && e.coeff != 0.0) {
            throw std::domain_error(
                "quadratic_form: volume-preserving perturbations require a vanishing k=0 "
                "coefficient");
        }
        k_max = std::max(k_max, e.k);
    }
    const ModeSpectrum spec = make_mode_spectrum(params, k_max);
    const double r_exp = (params.d - params.alpha + 1.0) / params.d;
    const double s_exp = (params.d + params.beta + 1.0) / params.d;
    const double m_r = std::pow(m, r_exp);
    const double m_s = std::pow(m, s_exp);

    double total = 0.0;
    for (const auto& e : u.entries) {
        // Degenerate-space index check; for very high modes the dimension
        // saturates the check trivially.
        unsigned long long dim;
        try {
            dim = multiplicity(e.k, params.d);
        } catch (const std::overflow_error&) {
            dim = ~0ULL;
        }
        if (e.i < 1 || static_cast<unsigned long long>(e.i) > dim) {
            throw std::domain_error("quadratic_form: harmonic index i=" + std::to_string(e.i) +
                                    " exceeds the eigenspace dimension at k=" +
                                    std::to_string(e.k));
        }
        const double bracket = eps * (spec.lambda[e.k] - spec.lambda[1]) +
                               m_r * (spec.mu_alpha[1] - spec.mu_alpha[e.k]) +
                               m_s * (spec.mu_beta[1] - spec.mu_beta[e.k]);
        total += bracket * e.coeff * e.coeff;
    }
    return total;
}

namespace {

Stability status_from_env(double eps, double env_value, bool certified, double tol) {
    if (env_value == 0.0 && certified && eps >= 0.0) {
        // Exact-zero boundary: all modes are certified nonpositive, the
        // stability condition eps >= eps(m) holds inclusively.
        return Stability::Stable;
    }
    if (eps >= env_value + tol) return Stability::Stable;
    if (eps <= env_value - tol) return Stability::Unstable;
    return Stability::Marginal;
}

}  // namespace

Verdict classify(double eps, double m, const ModelParams& params, double tol) {
    params.validate();
    if (!(m > 0.0)) {
        throw std::domain_error("classify: need m > 0");
    }
    if (!(eps >= 0.0)) {
        throw std::domain_error("classify: need eps >= 0");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("classify: tolerance must be positive");
    }

    Verdict v;

    // Quick certificate: eps(m) <= A_2 m^r, so clearing that bound by tol
    // settles the verdict without the mode sweep.
    const CurveCoeffs c2 = curve_coeffs(2, params);
    const double upper = c2.A * std::pow(m, c2.r);
    if (eps > upper + tol) {
        v.status = Stability::Stable;
        v.margin = eps - upper;
        return v;
    }

    const EnvelopeValue env = envelope_at(m, params);
    v.margin = eps - env.value;
    v.status = status_from_env(eps, env.value, env.certified, tol);
    if (v.status == Stability::Unstable) {
        // Smallest violating mode; the maximizing mode bounds the scan.
        CoeffLadder ladder(params);
        ladder.extend(env.active_k);
        const double m_r = std::pow(m, ladder.r());
        const double m_q = std::pow(m, ladder.q());
        for (int k = 2; k <= env.active_k; ++k) {
            if (m_r * (ladder.A(k) - ladder.B(k) * m_q) > eps) {
                v.witness_mode = k;
                break;
            }
        }
    }
    return v;
}

RegionGrid region_grid(const ModelParams& params, RangeSpec eps_range, RangeSpec m_range,
                       int n_eps, int n_m, double tol) {
    params.validate();
    if (n_eps < 1 || n_m < 1) {
        throw std::domain_error("region_grid: grid must contain at least one point per axis");
    }
    if (!(eps_range.lo >= 0.0) || !(eps_range.hi >= eps_range.lo) || !(m_range.lo > 0.0) ||
        !(m_range.hi >= m_range.lo)) {
        throw std::domain_error("region_grid: ranges must be positive and ordered");
    }

    RegionGrid g;
    g.eps_values.resize(n_eps);
    g.m_values.resize(n_m);
    for (int i = 0; i < n_eps; ++i) {
        g.eps_values[i] = n_eps == 1 ? eps_range.lo
                                     : eps_range.lo + (eps_range.hi - eps_range.lo) * i / (n_eps - 1);
    }
    for (int j = 0; j < n_m; ++j) {
        g.m_values[j] =
            n_m == 1 ? m_range.lo : m_range.lo + (m_range.hi - m_range.lo) * j / (n_m - 1);
    }

    // One envelope evaluation per column, shared across all rows.
    std::vector<EnvelopeValue> env(n_m);
    for (int j = 0; j < n_m; ++j) {
        env[j] = envelope_at(g.m_values[j], params);
    }

    g.status.resize(static_cast<size_t>(n_eps) * n_m);
    for (int i = 0; i < n_eps; ++i) {
        for (int j = 0; j < n_m; ++j) {
            g.status[static_cast<size_t>(i) * n_m + j] =
                status_from_env(g.eps_values[i], env[j].value, env[j].certified, tol);
        }
    }
    return g;
}

}  // namespace ballstab
