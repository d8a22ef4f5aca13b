#include "ballstab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ballstab/conjectures.hpp"
#include "ballstab/csv.hpp"
#include "ballstab/curves.hpp"
#include "ballstab/figures.hpp"
#include "ballstab/report.hpp"
#include "ballstab/stability.hpp"
#include "ballstab/version.hpp"

namespace ballstab::cli {

namespace {

using nlohmann::ordered_json;

// Writes either to the requested file or to stdout.
class OutputTarget {
   public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw std::runtime_error("cannot open output file: " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

   private:
    std::unique_ptr<std::ofstream> file_;
};

ordered_json params_json(const ModelParams& p) {
    ordered_json j;
    j["d"] = p.d;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    return j;
}

double resolve_m_max(const RunConfig& cfg) {
    if (cfg.m_max == "auto") {
        return 1.25 * m_star(cfg.params);
    }
    size_t pos = 0;
    const double v = std::stod(cfg.m_max, &pos);
    if (pos != cfg.m_max.size() || !(v > 0.0)) {
        throw std::domain_error("m-max must be a positive number or 'auto'");
    }
    return v;
}

int cmd_curve(const RunConfig& cfg) {
    const CurveLandmarks lm = landmarks(cfg.k, cfg.params);
    const double m_max = cfg.m_max == "auto" ? 1.1 * lm.root : resolve_m_max(cfg);
    CoeffLadder ladder(cfg.params);
    ladder.extend(cfg.k);

    OutputTarget out(cfg.output);
    if (cfg.format == "json") {
        ordered_json j;
        j["params"] = params_json(cfg.params);
        j["k"] = cfg.k;
        j["root"] = lm.root;
        j["crit"] = lm.crit;
        j["peak"] = lm.peak;
        j["inflection"] = lm.inflection ? ordered_json(*lm.inflection) : ordered_json(nullptr);
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < cfg.points; ++i) {
            const double m = cfg.m_min + (m_max - cfg.m_min) * i / (cfg.points - 1);
            rows.push_back({m, ladder.eps(cfg.k, m)});
        }
        j["data"] = rows;
        out.stream() << j.dump(2) << '\n';
    } else {
        CsvWriter csv(out.stream());
        csv.row({std::string("m"), std::string("eps")});
        for (int i = 0; i < cfg.points; ++i) {
            const double m = cfg.m_min + (m_max - cfg.m_min) * i / (cfg.points - 1);
            csv.row({m, ladder.eps(cfg.k, m)});
        }
    }
    return 0;
}

int cmd_envelope(const RunConfig& cfg) {
    const double m_max = resolve_m_max(cfg);
    const Envelope env = envelope(cfg.params, {cfg.m_min, m_max, cfg.points});
    OutputTarget out(cfg.output);
    if (cfg.format == "json") {
        ordered_json j;
        j["params"] = params_json(cfg.params);
        j["m_star"] = env.m_star;
        j["k_truncation"] = env.k_truncation;
        j["certified"] = env.certified;
        j["breakpoints"] = env.breakpoints;
        ordered_json rows = ordered_json::array();
        for (size_t i = 0; i < env.grid.size(); ++i) {
            rows.push_back({env.grid[i], env.values[i], env.active_mode[i]});
        }
        j["data"] = rows;
        out.stream() << j.dump(2) << '\n';
    } else {
        CsvWriter csv(out.stream());
        csv.row({std::string("m"), std::string("eps"), std::string("active_k")});
        for (size_t i = 0; i < env.grid.size(); ++i) {
            csv.row({env.grid[i], env.values[i], static_cast<long long>(env.active_mode[i])});
        }
    }
    return 0;
}

int cmd_classify(const RunConfig& cfg) {
    const Verdict v = classify(cfg.eps, cfg.m, cfg.params, cfg.tol);
    OutputTarget out(cfg.output);
    if (cfg.format == "csv") {
        CsvWriter csv(out.stream());
        csv.row({std::string("eps"), std::string("m"), std::string("status"),
                 std::string("margin"), std::string("witness_mode")});
        csv.row({cfg.eps, cfg.m, std::string(to_string(v.status)), v.margin,
                 v.witness_mode ? CsvCell(static_cast<long long>(*v.witness_mode))
                                : CsvCell(std::string())});
    } else {
        ordered_json j;
        j["params"] = params_json(cfg.params);
        j["eps"] = cfg.eps;
        j["m"] = cfg.m;
        j["status"] = to_string(v.status);
        j["margin"] = v.margin;
        j["witness_mode"] =
            v.witness_mode ? ordered_json(*v.witness_mode) : ordered_json(nullptr);
        j["tol"] = cfg.tol;
        out.stream() << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_region(const RunConfig& cfg) {
    const double m_max = resolve_m_max(cfg);
    double eps_max = cfg.eps_max;
    if (eps_max < 0.0) {
        eps_max = 1.2 * landmarks(2, cfg.params).peak;
    }
    const double m_lo = cfg.m_min > 0.0 ? cfg.m_min : m_max * 1e-3;
    const RegionGrid grid = region_grid(cfg.params, {cfg.eps_min, eps_max}, {m_lo, m_max},
                                        cfg.eps_points, cfg.m_points, cfg.tol);
    OutputTarget out(cfg.output);
    CsvWriter csv(out.stream());
    csv.row({std::string("eps"), std::string("m"), std::string("status")});
    for (size_t i = 0; i < grid.eps_values.size(); ++i) {
        for (size_t j = 0; j < grid.m_values.size(); ++j) {
            csv.row({grid.eps_values[i], grid.m_values[j],
                     std::string(to_string(grid.status[i * grid.m_values.size() + j]))});
        }
    }
    return 0;
}

int cmd_mstar(const RunConfig& cfg) {
    const MStarResult res = m_star_checked(cfg.params);
    OutputTarget out(cfg.output);
    if (cfg.format == "json") {
        ordered_json j;
        j["params"] = params_json(cfg.params);
        j["m_star"] = res.value;
        j["branch"] = res.branch;
        j["branch1"] = res.branch1;
        j["branch2"] = res.branch2;
        j["beta_star"] = beta_star(cfg.params.d, cfg.params.alpha);
        j["near_threshold"] = res.near_threshold;
        j["consistent"] = res.consistent;
        out.stream() << j.dump(2) << '\n';
    } else {
        out.stream() << format_double(res.value) << '\n';
    }
    if (!res.consistent) {
        std::cerr << "diagnostic: m_star branches disagree near beta_star ("
                  << format_double(res.branch1) << " vs " << format_double(res.branch2) << ")\n";
        return 2;
    }
    return 0;
}

int cmd_betastar(const RunConfig& cfg) {
    const double v = beta_star(cfg.params.d, cfg.params.alpha);
    OutputTarget out(cfg.output);
    if (cfg.format == "json") {
        ordered_json j;
        j["d"] = cfg.params.d;
        j["alpha"] = cfg.params.alpha;
        j["beta_star"] = v;
        out.stream() << j.dump(2) << '\n';
    } else {
        out.stream() << format_double(v) << '\n';
    }
    return 0;
}

int cmd_check(const RunConfig& cfg) {
    CheckReport rep;
    if (cfg.suite == "lemmas") {
        rep = run_lemma_suite(cfg.grid == "quick" ? quick_grid() : standard_grid());
    } else if (cfg.suite == "oracle") {
        rep = run_oracle_suite(cfg.order, cfg.samples, cfg.seed);
    } else {
        throw std::domain_error("check: unknown suite '" + cfg.suite +
                                "' (expected 'lemmas' or 'oracle')");
    }
    OutputTarget out(cfg.output);
    if (cfg.format == "csv") {
        CsvWriter csv(out.stream());
        csv.row({std::string("name"), std::string("params"), std::string("residual"),
                 std::string("tolerance"), std::string("pass")});
        for (const auto& t : rep.tests) {
            csv.row({t.name, t.params.dump(), t.residual, t.tolerance,
                     std::string(t.pass ? "true" : "false")});
        }
    } else {
        out.stream() << rep.to_json().dump(2) << '\n';
    }
    return rep.all_pass() ? 0 : 2;
}

int cmd_cascade(const RunConfig& cfg) {
    const CascadeReport rep = cascade(cfg.params, cfg.k_max, cfg.points);
    OutputTarget out(cfg.output);
    if (cfg.format == "csv") {
        CsvWriter csv(out.stream());
        csv.row({std::string("m_lo"), std::string("m_hi"), std::string("active_k")});
        for (const auto& s : rep.segments) {
            csv.row({s.m_lo, s.m_hi, static_cast<long long>(s.active_k)});
        }
    } else {
        ordered_json j;
        j["params"] = params_json(cfg.params);
        j["k_max"] = rep.k_max;
        j["m_star"] = rep.m_star;
        ordered_json segs = ordered_json::array();
        for (const auto& s : rep.segments) {
            segs.push_back({{"m_lo", s.m_lo}, {"m_hi", s.m_hi}, {"active_k", s.active_k}});
        }
        j["segments"] = segs;
        j["mbar_points"] = rep.mbar_points;
        j["skipped_modes"] = rep.skipped_modes;
        j["converges_to_mstar"] = rep.converges_to_mstar;
        j["truncated"] = rep.truncated;
        j["coarse_grid"] = rep.coarse_grid;
        out.stream() << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_conjecture(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    const double bstar = beta_star(p.d, p.alpha);
    const CascadeReport rep = cascade(p, cfg.k_max, cfg.points);

    ordered_json j;
    j["params"] = params_json(p);
    j["beta_star"] = bstar;
    j["m_star"] = rep.m_star;

    // Lambda_k sequence with applicability flags.
    ordered_json lam = ordered_json::array();
    for (int k = 3; k <= cfg.k_max; ++k) {
        const LambdaSeqValue v = lambda_seq(k, p);
        lam.push_back({{"k", k}, {"value", v.value}, {"applicable", v.applicable}});
    }
    j["lambda_seq"] = lam;

    // Measured claims; reported, never asserted.
    ordered_json claims;
    {
        const auto m23 = intersection(2, 3, p);
        const bool leads = !rep.segments.empty() && rep.segments.front().active_k == 2 &&
                           m23 && rep.segments.front().m_hi >= *m23 * (1.0 - 1e-9);
        claims["eps2_leads_until_m23"] = leads;
    }
    {
        CoeffLadder ladder(p);
        ladder.extend(cfg.k_max);
        bool decreasing = true;
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 2; k <= cfg.k_max; ++k) {
            const CurveLandmarks lm = landmarks(k, p);
            if (lm.peak > prev * (1.0 + 1e-12)) {
                decreasing = false;
                break;
            }
            prev = lm.peak;
        }
        claims["max_eps_k_decreasing"] = decreasing;
    }
    {
        bool increasing = true;
        for (size_t i = 0; i + 1 < rep.segments.size(); ++i) {
            if (rep.segments[i + 1].active_k <= rep.segments[i].active_k) {
                increasing = false;
                break;
            }
        }
        claims["active_modes_increasing"] = increasing;
        claims["breakpoints_approach_mstar"] = rep.converges_to_mstar;
    }
    {
        // m_{3,k} intersections, the quantities behind the eps_2 claim.
        ordered_json m3k = ordered_json::array();
        for (int k = 4; k <= std::min(cfg.k_max, 16); ++k) {
            const auto v = intersection(3, k, p);
            m3k.push_back({{"k", k}, {"m", v ? ordered_json(*v) : ordered_json(nullptr)}});
        }
        j["m_3k"] = m3k;
    }
    j["claims"] = claims;
    j["cascade_skipped_modes"] = rep.skipped_modes;

    OutputTarget out(cfg.output);
    out.stream() << j.dump(2) << '\n';
    return 0;
}

int cmd_figure(const RunConfig& cfg) {
    const auto id = parse_figure_id(cfg.figure);
    if (!id) {
        std::cerr << "error: unknown figure id '" << cfg.figure << "'\n";
        return 1;
    }
    FigureOptions opts;
    opts.points = cfg.points;
    opts.k_max = cfg.k_max;
    const auto files = export_figure(*id, cfg.out_dir, opts);
    for (const auto& f : files) {
        std::cout << f << '\n';
    }
    return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case RunConfig::Command::Curve: cfg.params.validate(); return cmd_curve(cfg);
            case RunConfig::Command::Envelope: cfg.params.validate(); return cmd_envelope(cfg);
            case RunConfig::Command::Classify: cfg.params.validate(); return cmd_classify(cfg);
            case RunConfig::Command::Region: cfg.params.validate(); return cmd_region(cfg);
            case RunConfig::Command::MStar: cfg.params.validate(); return cmd_mstar(cfg);
            case RunConfig::Command::BetaStar: return cmd_betastar(cfg);
            case RunConfig::Command::Check: return cmd_check(cfg);
            case RunConfig::Command::Cascade: cfg.params.validate(); return cmd_cascade(cfg);
            case RunConfig::Command::Conjecture: cfg.params.validate(); return cmd_conjecture(cfg);
            case RunConfig::Command::Figure: return cmd_figure(cfg);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace ballstab::cli
