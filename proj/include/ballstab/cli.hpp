#pragma once

#include <cstdint>
#include <string>

#include "ballstab/spectrum.hpp"

namespace ballstab::cli {

// One fully parsed invocation. Exactly one command per run; outputs are
// deterministic byte-for-byte given the same config (and seed).
struct RunConfig {
    enum class Command {
        Curve,
        Envelope,
        Classify,
        Region,
        MStar,
        BetaStar,
        Check,
        Cascade,
        Conjecture,
        Figure,
    };

    Command command = Command::BetaStar;
    ModelParams params{3, 1.0, 4.0};

    int k = 2;                      // curve
    double eps = 0.0;               // classify / region
    double m = 1.0;                 // classify
    double tol = 1e-9;              // classify band half-width

    double m_min = 0.0;
    std::string m_max = "auto";     // number or "auto" (= 1.25 m_*)
    int points = 1024;

    double eps_min = 0.0;
    double eps_max = -1.0;          // < 0: auto (= 1.2 eps_2 peak)
    int eps_points = 256;
    int m_points = 256;

    std::string suite = "lemmas";   // check: lemmas | oracle
    std::string grid = "standard";  // check: standard | quick
    int order = 64;                 // oracle suite quadrature order
    long long samples = 200000;     // oracle suite Monte Carlo samples
    std::uint64_t seed = 12345;

    int k_max = 64;                 // cascade / conjecture / figure depth

    std::string figure;             // figure id
    std::string out_dir = ".";      // figure output directory

    std::string format = "csv";     // csv | json
    std::string output;             // file path; empty means stdout
};

// Executes the command; returns the process exit status:
//   0 success, 1 domain error, 2 internal consistency diagnostic.
int run(const RunConfig& cfg);

}  // namespace ballstab::cli
