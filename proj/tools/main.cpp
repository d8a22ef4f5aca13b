#include <string>

#include "CLI11.hpp"

#include "ballstab/cli.hpp"
#include "ballstab/version.hpp"

namespace {

using ballstab::cli::RunConfig;

void add_params(CLI::App* cmd, RunConfig& cfg, bool need_beta = true) {
    cmd->add_option("--d", cfg.params.d, "ambient dimension (>= 2)")->required();
    cmd->add_option("--alpha", cfg.params.alpha, "repulsion exponent, 0 < alpha < d-1")
        ->required();
    if (need_beta) {
        cmd->add_option("--beta", cfg.params.beta, "attraction exponent, > 0")->required();
    }
}

void add_output(CLI::App* cmd, RunConfig& cfg, const char* default_format = "csv") {
    cfg.format = default_format;
    cmd->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", cfg.output, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ballstab " + std::string(ballstab::kVersion) +
        " - stability phase diagrams of the unit ball for perimeter-perturbed\n"
        "attractive-repulsive interaction energies.\n\n"
        "CSV columns: curve -> m,eps | envelope -> m,eps,active_k |\n"
        "region -> eps,m,status | cascade -> m_lo,m_hi,active_k |\n"
        "check -> name,params,residual,tolerance,pass"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* curve = app.add_subcommand("curve", "sample one threshold curve eps_k(m)");
    add_params(curve, cfg);
    curve->add_option("--k", cfg.k, "mode index (>= 2)")->required();
    curve->add_option("--m-min", cfg.m_min, "grid start (default 0)");
    curve->add_option("--m-max", cfg.m_max, "grid end, number or 'auto'");
    curve->add_option("--points", cfg.points, "number of samples");
    add_output(curve, cfg);
    curve->callback([&] { cfg.command = RunConfig::Command::Curve; });

    auto* env = app.add_subcommand("envelope", "sample the stability boundary eps(m)");
    add_params(env, cfg);
    env->add_option("--m-min", cfg.m_min, "grid start (default 0)");
    env->add_option("--m-max", cfg.m_max, "grid end, number or 'auto' (= 1.25 m_star)");
    env->add_option("--points", cfg.points, "number of samples");
    add_output(env, cfg);
    env->callback([&] { cfg.command = RunConfig::Command::Envelope; });

    auto* cls = app.add_subcommand("classify", "stability verdict for one (eps, m) point");
    add_params(cls, cfg);
    cls->add_option("--eps", cfg.eps, "perimeter strength (>= 0)")->required();
    cls->add_option("--m", cfg.m, "mass parameter (> 0)")->required();
    cls->add_option("--tol", cfg.tol, "marginal band half-width (default 1e-9)");
    add_output(cls, cfg, "json");
    cls->callback([&] { cfg.command = RunConfig::Command::Classify; });

    auto* region = app.add_subcommand("region", "stability classification over an (eps, m) grid");
    add_params(region, cfg);
    region->add_option("--eps-min", cfg.eps_min, "eps grid start");
    region->add_option("--eps-max", cfg.eps_max, "eps grid end (default: 1.2 x peak)");
    region->add_option("--m-min", cfg.m_min, "m grid start (default: m_max/1000)");
    region->add_option("--m-max", cfg.m_max, "m grid end, number or 'auto'");
    region->add_option("--eps-points", cfg.eps_points, "rows");
    region->add_option("--m-points", cfg.m_points, "columns");
    add_output(region, cfg);
    region->callback([&] { cfg.command = RunConfig::Command::Region; });

    auto* mstar = app.add_subcommand("mstar", "stability mass threshold m_star");
    add_params(mstar, cfg);
    add_output(mstar, cfg);
    mstar->callback([&] { cfg.command = RunConfig::Command::MStar; });

    auto* bstar = app.add_subcommand("betastar", "attraction threshold beta_star(d, alpha)");
    add_params(bstar, cfg, /*need_beta=*/false);
    add_output(bstar, cfg);
    bstar->callback([&] { cfg.command = RunConfig::Command::BetaStar; });

    auto* check = app.add_subcommand("check", "run a verification suite");
    check->add_option("--suite", cfg.suite, "lemmas | oracle")
        ->check(CLI::IsMember({"lemmas", "oracle"}));
    check->add_option("--grid", cfg.grid, "standard | quick (lemma suite)")
        ->check(CLI::IsMember({"standard", "quick"}));
    check->add_option("--order", cfg.order, "quadrature order (oracle suite)");
    check->add_option("--samples", cfg.samples, "Monte Carlo samples (oracle suite)");
    check->add_option("--seed", cfg.seed, "Monte Carlo seed");
    add_output(check, cfg, "json");
    check->callback([&] { cfg.command = RunConfig::Command::Check; });

    auto* casc = app.add_subcommand("cascade", "segment decomposition of the boundary");
    add_params(casc, cfg);
    casc->add_option("--k-max", cfg.k_max, "highest reported mode");
    casc->add_option("--points", cfg.points, "grid used for the coarseness diagnostic");
    add_output(casc, cfg, "json");
    casc->callback([&] { cfg.command = RunConfig::Command::Cascade; });

    auto* conj = app.add_subcommand("conjecture", "measure the open monotonicity claims");
    add_params(conj, cfg);
    conj->add_option("--k-max", cfg.k_max, "sequence depth");
    conj->add_option("--points", cfg.points, "cascade grid");
    add_output(conj, cfg, "json");
    conj->callback([&] { cfg.command = RunConfig::Command::Conjecture; });

    auto* fig = app.add_subcommand("figure", "export data for a catalogued figure");
    fig->add_option("--id", cfg.figure,
                    "fig1_left fig1_right fig2_left fig2_right fig3 fig4_left fig4_right "
                    "fig5_left fig5_right")
        ->required();
    fig->add_option("--out-dir", cfg.out_dir, "output directory");
    fig->add_option("--points", cfg.points, "samples along m");
    fig->add_option("--k-max", cfg.k_max, "cascade / sequence depth");
    fig->callback([&] { cfg.command = RunConfig::Command::Figure; });

    CLI11_PARSE(app, argc, argv);
    return ballstab::cli::run(cfg);
}
