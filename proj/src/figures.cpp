#include "ballstab/figures.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "ballstab/conjectures.hpp"
#include "ballstab/csv.hpp"
#include "ballstab/curves.hpp"
#include "ballstab/stability.hpp"
#include "ballstab/version.hpp"

namespace ballstab {

namespace {

struct FigureInfo {
    FigureId id;
    const char* name;
    ModelParams params;
};

constexpr int kFigureCount = 9;

const FigureInfo kFigures[kFigureCount] = {
    {FigureId::fig1_left, "fig1_left", {3, 1.0, 30.0}},
    {FigureId::fig1_right, "fig1_right", {3, 1.0, 4.0}},
    {FigureId::fig2_left, "fig2_left", {3, 0.2, 15.0}},
    {FigureId::fig2_right, "fig2_right", {3, 1.0, 24.0}},
    {FigureId::fig3, "fig3", {6, 3.0, 30.0}},
    {FigureId::fig4_left, "fig4_left", {12, 9.0, 4.0}},
    {FigureId::fig4_right, "fig4_right", {12, 9.0, 40.0}},
    {FigureId::fig5_left, "fig5_left", {10, 8.0, 10.0}},
    {FigureId::fig5_right, "fig5_right", {10, 8.0, 130.0}},
};

const FigureInfo& info(FigureId id) {
    for (const auto& f : kFigures) {
        if (f.id == id) return f;
    }
    throw std::domain_error("unknown figure id");
}

std::ofstream open_out(const std::filesystem::path& p, std::vector<std::string>& written) {
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + p.string());
    }
    written.push_back(p.string());
    return out;
}

void write_landmarks_sidecar(const std::filesystem::path& path, const FigureInfo& fig,
                             std::vector<std::string>& written) {
    const ModelParams& p = fig.params;
    const MStarResult ms = m_star_checked(p);
    const CurveLandmarks lm2 = landmarks(2, p);
    const CurveLandmarks lm3 = landmarks(3, p);
    const auto m23 = intersection(2, 3, p);

    nlohmann::ordered_json j;
    j["figure"] = fig.name;
    j["generated_with_version"] = kVersion;
    j["d"] = p.d;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["beta_star"] = beta_star(p.d, p.alpha);
    j["m_star"] = ms.value;
    j["m_star_branch"] = ms.branch;
    j["m2_crit"] = lm2.crit;
    j["m2_root"] = lm2.root;
    j["m3_crit"] = lm3.crit;
    j["m23"] = m23 ? nlohmann::ordered_json(*m23) : nlohmann::ordered_json(nullptr);
    j["eps2_peak"] = lm2.peak;

    auto out = open_out(path, written);
    out << j.dump(2) << '\n';
}

void write_envelope_csv(const std::filesystem::path& path, const ModelParams& p, double m_max,
                        int points, std::vector<std::string>& written) {
    const Envelope env = envelope(p, {0.0, m_max, points});
    auto out = open_out(path, written);
    CsvWriter csv(out);
    csv.row({std::string("m"), std::string("eps"), std::string("active_k")});
    for (size_t i = 0; i < env.grid.size(); ++i) {
        csv.row({env.grid[i], env.values[i], static_cast<long long>(env.active_mode[i])});
    }
}

void write_region_csv(const std::filesystem::path& path, const ModelParams& p, double m_star_v,
                      double eps_peak, int res, std::vector<std::string>& written) {
    const RegionGrid grid = region_grid(p, {0.0, 1.2 * eps_peak},
                                        {m_star_v * 1e-3, 1.25 * m_star_v}, res, res);
    auto out = open_out(path, written);
    CsvWriter csv(out);
    csv.row({std::string("eps"), std::string("m"), std::string("status")});
    for (size_t i = 0; i < grid.eps_values.size(); ++i) {
        for (size_t j = 0; j < grid.m_values.size(); ++j) {
            csv.row({grid.eps_values[i], grid.m_values[j],
                     std::string(to_string(grid.status[i * grid.m_values.size() + j]))});
        }
    }
}

void write_curves_csv(const std::filesystem::path& path, const ModelParams& p,
                      const std::vector<int>& ks, double m_max, int points,
                      std::vector<std::string>& written) {
    CoeffLadder ladder(p);
    int k_hi = 2;
    for (int k : ks) k_hi = std::max(k_hi, k);
    ladder.extend(k_hi);

    auto out = open_out(path, written);
    CsvWriter csv(out);
    csv.row({std::string("k"), std::string("m"), std::string("eps")});
    for (int k : ks) {
        for (int i = 0; i < points; ++i) {
            const double m = m_max * i / (points - 1);
            csv.row({static_cast<long long>(k), m, ladder.eps(k, m)});
        }
    }
}

void write_cascade_json(const std::filesystem::path& path, const ModelParams& p, int k_max,
                        int points, std::vector<std::string>& written) {
    const CascadeReport rep = cascade(p, k_max, points);
    nlohmann::ordered_json j;
    j["d"] = p.d;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["k_max"] = rep.k_max;
    j["m_star"] = rep.m_star;
    j["segments"] = nlohmann::ordered_json::array();
    for (const auto& s : rep.segments) {
        nlohmann::ordered_json js;
        js["m_lo"] = s.m_lo;
        js["m_hi"] = s.m_hi;
        js["active_k"] = s.active_k;
        j["segments"].push_back(js);
    }
    j["mbar_points"] = rep.mbar_points;
    j["skipped_modes"] = rep.skipped_modes;
    j["converges_to_mstar"] = rep.converges_to_mstar;
    j["truncated"] = rep.truncated;
    j["coarse_grid"] = rep.coarse_grid;

    auto out = open_out(path, written);
    out << j.dump(2) << '\n';
}

void write_lambda_csv(const std::filesystem::path& path, const ModelParams& p, int k_max,
                      std::vector<std::string>& written) {
    auto out = open_out(path, written);
    CsvWriter csv(out);
    csv.row({std::string("k"), std::string("lambda_seq"), std::string("applicable")});
    for (int k = 3; k <= k_max; ++k) {
        const LambdaSeqValue v = lambda_seq(k, p);
        csv.row({static_cast<long long>(k), v.value,
                 std::string(v.applicable ? "true" : "false")});
    }
}

}  // namespace

std::optional<FigureId> parse_figure_id(std::string_view name) {
    for (const auto& f : kFigures) {
        if (name == f.name) return f.id;
    }
    return std::nullopt;
}

const char* figure_name(FigureId id) { return info(id).name; }

ModelParams figure_params(FigureId id) { return info(id).params; }

std::vector<FigureId> all_figures() {
    std::vector<FigureId> ids;
    for (const auto& f : kFigures) ids.push_back(f.id);
    return ids;
}

std::vector<std::string> export_figure(FigureId id, const std::string& out_dir,
                                       const FigureOptions& opts) {
    const FigureInfo& fig = info(id);
    const ModelParams& p = fig.params;
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    std::vector<std::string> written;

    const std::string base = fig.name;
    write_landmarks_sidecar(dir / (base + "_landmarks.json"), fig, written);

    const double ms = m_star(p);
    switch (id) {
        case FigureId::fig1_left:
        case FigureId::fig1_right: {
            write_envelope_csv(dir / (base + "_envelope.csv"), p, 1.25 * ms, opts.points,
                               written);
            const CurveLandmarks lm2 = landmarks(2, p);
            write_region_csv(dir / (base + "_region.csv"), p, ms, lm2.peak,
                             opts.region_resolution, written);
            break;
        }
        case FigureId::fig2_left: {
            const CurveLandmarks lm5 = landmarks(5, p);
            write_curves_csv(dir / (base + "_curve.csv"), p, {5}, 1.1 * lm5.root, opts.points,
                             written);
            break;
        }
        case FigureId::fig2_right: {
            const CurveLandmarks lm2 = landmarks(2, p);
            const CurveLandmarks lm3 = landmarks(3, p);
            write_curves_csv(dir / (base + "_curves.csv"), p, {2, 3},
                             1.05 * std::max(lm2.root, lm3.root), opts.points, written);
            break;
        }
        case FigureId::fig3: {
            write_curves_csv(dir / (base + "_curves.csv"), p, {2, 3}, 1.25 * ms, opts.points,
                             written);
            write_envelope_csv(dir / (base + "_envelope.csv"), p, 1.25 * ms, opts.points,
                               written);
            break;
        }
        case FigureId::fig4_left:
        case FigureId::fig4_right: {
            std::vector<int> ks;
            for (int k = 2; k <= 12; ++k) ks.push_back(k);
            write_curves_csv(dir / (base + "_curves.csv"), p, ks, 1.05 * ms, opts.points,
                             written);
            write_envelope_csv(dir / (base + "_envelope.csv"), p, 1.25 * ms, opts.points,
                               written);
            write_cascade_json(dir / (base + "_cascade.json"), p, opts.k_max, opts.points,
                               written);
            break;
        }
        case FigureId::fig5_left:
        case FigureId::fig5_right: {
            write_lambda_csv(dir / (base + "_lambda.csv"), p, opts.k_max, written);
            break;
        }
    }
    return written;
}

}  // namespace ballstab
