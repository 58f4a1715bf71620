#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "medea/config.hpp"
#include "medea/report.hpp"
#include "medea/runner.hpp"
#include "medea/sweep.hpp"

namespace {

medea::SimConfig resolve_config(const std::string& config_path, const std::string& presets) {
    medea::SimConfig cfg;
    if (!config_path.empty())
        cfg = medea::parse_config(medea::read_file(config_path));
    if (!presets.empty())
        medea::apply_presets(cfg, presets);
    return cfg;
}

int cmd_run(const std::string& config_path, const std::string& presets, const std::string& out,
            long long seed, int parallel, bool grid, bool dump) {
    medea::SimConfig cfg = resolve_config(config_path, presets);
    if (seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(seed);
    if (dump) {
        std::cout << medea::dump_config(cfg);
        return 0;
    }
    if (out.empty()) {
        std::cerr << "medea run: --out is required\n";
        return 2;
    }
    if (grid) {
        const auto dirs = medea::run_grid(cfg, out, parallel);
        for (const auto& d : dirs)
            std::cout << d.string() << "\n";
    } else {
        medea::run_experiment(cfg, out, parallel);
        std::cout << out << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out) {
    medea::SweepConfig sweep;
    if (!config_path.empty())
        sweep = medea::parse_sweep_config(medea::read_file(config_path));
    const auto cells = medea::sweep_neutral_line(sweep);
    std::filesystem::create_directories(out);
    medea::write_file(std::filesystem::path(out) / "surface.csv", medea::surface_csv(cells));
    std::cout << (std::filesystem::path(out) / "surface.csv").string() << "\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& in_dirs, const std::string& out, double alpha) {
    std::vector<medea::ExperimentSample> samples;
    samples.reserve(in_dirs.size());
    for (const std::string& dir : in_dirs)
        samples.push_back(medea::load_experiment(dir));
    medea::write_report(samples, out, alpha);
    std::cout << (std::filesystem::path(out) / "report.md").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"medea: seasonal token-foraging swarm simulator and experiment harness"};
    app.set_version_flag("--version", std::string(medea::kVersion));
    app.require_subcommand(1);

    std::string config_path, presets, out;
    long long seed = -1;
    int parallel = 1;
    bool grid = false, dump = false;

    auto* run = app.add_subcommand("run", "Run one experiment (N independent seeded runs)");
    run->add_option("--config", config_path, "Flat key=value config file");
    run->add_option("--preset", presets,
                    "Comma-separated presets applied on top of the config "
                    "(desk, paper, scarce, balanced, abundant, static, fast, slow, "
                    "baseline, il, evo, evo_il)");
    run->add_option("--out", out, "Output directory");
    run->add_option("--seed", seed, "Base seed; run k uses seed+k");
    run->add_option("--parallel", parallel, "Worker threads (across runs only)")
        ->check(CLI::PositiveNumber);
    run->add_flag("--grid", grid, "Run the full 3x3x4 preset grid under --out");
    run->add_flag("--dump-config", dump, "Print the resolved config and exit");

    std::string sweep_config, sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Regenerate the delta-energy neutral-line surface");
    sweep->add_option("--config", sweep_config, "Sweep config file (sweep.* keys plus base keys)");
    sweep->add_option("--out", sweep_out, "Output directory")->required();

    std::vector<std::string> report_in;
    std::string report_out;
    double alpha = 0.05;
    auto* report = app.add_subcommand("report", "Pairwise comparison tables across experiments");
    report->add_option("--in", report_in, "Experiment directories")->required()->expected(-1);
    report->add_option("--out", report_out, "Output directory")->required();
    report->add_option("--alpha", alpha, "Significance level");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, presets, out, seed, parallel, grid, dump);
        if (sweep->parsed())
            return cmd_sweep(sweep_config, sweep_out);
        if (report->parsed())
            return cmd_report(report_in, report_out, alpha);
    } catch (const std::exception& e) {
        std::cerr << "medea: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
