#include <CLI11.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "bregman/cli.hpp"

namespace {

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

std::vector<double> split_doubles(const std::string& csv) {
    std::vector<double> out;
    for (const auto& tok : split_names(csv)) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proper binary losses, Bregman divergences and KL upper bounds"};
    app.set_config("--config", "", "Flat key = value configuration file; flags override it");

    bregman::RunConfig cfg;
    std::string losses_csv, generators_csv, p_csv, support_csv;

    app.add_option("--grid-n", cfg.grid_n, "Interior grid size for binary scans")
        ->capture_default_str();
    app.add_option("--samples", cfg.samples, "Random pair count for sampled scans")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed for sampled scans")->capture_default_str();
    app.add_option("--losses", losses_csv, "Comma-separated loss names");
    app.add_option("--generators", generators_csv, "Comma-separated generator names");
    app.add_option("--output,-o", cfg.output_path, "Output CSV path (default <command>.csv)");
    app.add_flag("--plot", cfg.plot, "Also write SVG charts for experiments");
    app.add_option("--clamp-epsilon", cfg.clamp_epsilon,
                   "Endpoint clamp for logs and ratios")
        ->capture_default_str();
    app.add_option("--fixtures-dir", cfg.fixtures_dir, "Fixtures directory")
        ->capture_default_str();

    auto* catalog = app.add_subcommand("catalog", "Catalog self-checks and key constants");
    auto* theorem1 =
        app.add_subcommand("verify-theorem1", "Binary bound scan on the interior grid");
    auto* theorem2 = app.add_subcommand("verify-theorem2",
                                        "Separable bound on random cube/simplex pairs");
    theorem2->add_option("--m", cfg.m, "Vector dimension")->capture_default_str();
    auto* corollary1 = app.add_subcommand("verify-corollary1",
                                          "Second-order local expansion checks");
    auto* estimate = app.add_subcommand("estimate-c", "Empirical sup-ratio constants");
    auto* fixed = app.add_subcommand("exp-fixed-expectation",
                                     "Minimize divergences under E_q[Y] = c sweeps");
    fixed->add_option("--p", p_csv, "Truth distribution (comma-separated, on the simplex)");
    fixed->add_option("--support", support_csv, "Alphabet values (comma-separated)");
    auto* eps = app.add_subcommand("exp-eps-constraint",
                                   "Minimize divergences under D_eps(p||q) >= eps sweeps");
    eps->add_option("--p", p_csv, "Truth distribution (comma-separated, on the simplex)");
    eps->add_option("--eps-points", cfg.eps_points, "Sweep size")->capture_default_str();
    auto* regen = app.add_subcommand("regen-fixtures", "Regenerate oracle fixtures");
    regen->add_option("--resolution", cfg.resolution, "Oracle lattice resolution")
        ->capture_default_str();

    app.require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : {catalog, theorem1, theorem2, corollary1, estimate, fixed, eps, regen}) {
        if (sub->parsed()) cfg.command = sub->get_name();
    }
    if (!losses_csv.empty()) cfg.losses = split_names(losses_csv);
    if (!generators_csv.empty()) cfg.generators = split_names(generators_csv);
    try {
        if (!p_csv.empty()) cfg.p = split_doubles(p_csv);
        if (!support_csv.empty()) cfg.support = split_doubles(support_csv);
    } catch (const std::exception&) {
        std::fprintf(stderr, "could not parse --p/--support values\n");
        return 2;
    }
    if (cfg.support.size() != cfg.p.size() && support_csv.empty()) {
        cfg.support.resize(cfg.p.size());
        for (std::size_t i = 0; i < cfg.support.size(); ++i) {
            cfg.support[i] = static_cast<double>(i);
        }
    }

    return bregman::run(cfg);
}
