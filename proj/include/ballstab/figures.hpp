#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ballstab/spectrum.hpp"

namespace ballstab {

// The nine catalogued parameter sets. Each export writes CSV data plus a
// JSON sidecar with the structural landmarks for that parameter set.
enum class FigureId {
    fig1_left,   // d=3,  alpha=1,   beta=30  boundary + region
    fig1_right,  // d=3,  alpha=1,   beta=4   boundary + region
    fig2_left,   // d=3,  alpha=0.2, beta=15  single curve k=5
    fig2_right,  // d=3,  alpha=1,   beta=24  curves k=2,3
    fig3,        // d=6,  alpha=3,   beta=30  two-curve boundary
    fig4_left,   // d=12, alpha=9,   beta=4   curve family + cascade
    fig4_right,  // d=12, alpha=9,   beta=40  curve family + cascade
    fig5_left,   // d=10, alpha=8,   beta=10  Lambda_k sequence
    fig5_right,  // d=10, alpha=8,   beta=130 Lambda_k sequence
};

std::optional<FigureId> parse_figure_id(std::string_view name);
const char* figure_name(FigureId id);
ModelParams figure_params(FigureId id);
std::vector<FigureId> all_figures();

struct FigureOptions {
    int points = 2048;          // samples along m
    int k_max = 64;             // cascade / sequence depth
    int region_resolution = 256;
};

// Writes the figure's data files into out_dir and returns their paths.
std::vector<std::string> export_figure(FigureId id, const std::string& out_dir,
                                       const FigureOptions& opts = {});

}  // namespace ballstab
