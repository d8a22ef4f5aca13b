#pragma once

#include <optional>
#include <vector>

#include "ballstab/curves.hpp"
#include "ballstab/spectrum.hpp"

namespace ballstab {

enum class Stability { Stable, Unstable, Marginal };

const char* to_string(Stability s);

// Sparse set of Fourier coefficients a_k^i of a boundary perturbation.
// Admissible (volume-preserving) perturbations carry no k = 0 component.
struct FourierEntry {
    int k = 0;
    int i = 1;  // 1-based index within the degree-k eigenspace
    double coeff = 0.0;
};

struct FourierPerturbation {
    std::vector<FourierEntry> entries;
};

struct Verdict {
    Stability status = Stability::Marginal;
    // eps - eps(m). When the quick bound eps > A_2 m^r already certifies
    // stability this is the conservative value eps - A_2 m^r instead.
    double margin = 0.0;
    // Smallest k >= 2 with eps_k(m) > eps; present exactly when Unstable.
    std::optional<int> witness_mode;
};

// Second-variation quadratic form evaluated on the given coefficients:
//   sum [ eps (lambda_k - lambda_1)
//         + m^{(d-alpha+1)/d} (mu_1(-alpha) - mu_k(-alpha))
//         + m^{(d+beta+1)/d} (mu_1(beta)  - mu_k(beta)) ] (a_k^i)^2.
double quadratic_form(double eps, double m, const FourierPerturbation& u,
                      const ModelParams& params);

// Stability verdict for the pair (eps, m): Stable when eps clears the
// boundary eps(m) by at least tol, Unstable when it falls short by tol,
// Marginal inside the band. Where the boundary is exactly zero (m past the
// stability mass) any eps >= 0 is certified Stable.
Verdict classify(double eps, double m, const ModelParams& params, double tol = 1e-9);

struct RangeSpec {
    double lo = 0.0;
    double hi = 1.0;
};

// Row-major classification grid: rows sweep eps (ascending), columns sweep m
// (ascending). status[row * n_m + col].
struct RegionGrid {
    std::vector<double> eps_values;
    std::vector<double> m_values;
    std::vector<Stability> status;
};

RegionGrid region_grid(const ModelParams& params, RangeSpec eps_range, RangeSpec m_range,
                       int n_eps, int n_m, double tol = 1e-9);

}  // namespace ballstab
