#pragma once

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "medea/config.hpp"
#include "medea/csv.hpp"
#include "medea/genome_io.hpp"
#include "medea/metrics.hpp"

namespace medea {

inline constexpr const char* kVersion = "0.1.0";

inline std::string environment_label(const SimConfig& c) {
    if (c.token_count == 300 && c.token_value == 1150.0) return "scarce";
    if (c.token_count == 625 && c.token_value == 625.0) return "balanced";
    if (c.token_count == 1150 && c.token_value == 425.0) return "abundant";
    return "custom_" + std::to_string(c.token_count) + "x" +
           csv_number(c.token_value);
}

inline std::string season_label(const SimConfig& c) {
    if (c.season_period == 0) return "static";
    if (c.season_period == 5000) return "fast";
    if (c.season_period == 15000) return "slow";
    return "period" + std::to_string(c.season_period);
}

inline std::string run_stem(int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "run_%03d", k);
    return buf;
}

inline std::string epochs_csv(const RunRecord& rec) {
    CsvBuilder b;
    b.comment("one row per epoch of experiment.epoch_length iterations");
    b.comment(
        "p,n: tokens collected during the epoch (count); "
        "totalTokenRatio = p/(p+n), nan when p+n=0");
    b.comment(
        "pn_diff = (p-n)/(p+n), dimensionless in [-1,1]; "
        "alive: robots holding a genome at epoch end (count)");
    b.comment("mean_energy: mean energy of those robots (energy units)");
    b.field("run").field("epoch").field("season").field("p").field("n");
    b.field("totalTokenRatio").field("pn_diff").field("alive");
    b.field("mean_energy");
    b.end_row();
    for (const EpochRow& e : rec.epochs) {
        b.field(e.run).field(e.epoch).field(e.season).field(e.p).field(e.n);
        b.field(e.ratio).field(e.diff).field(e.alive).field(e.mean_energy);
        b.end_row();
    }
    return b.str();
}

inline std::string seasons_csv(const RunRecord& rec) {
    CsvBuilder b;
    b.comment("one row per season span, in run order (span counts from 0)");
    b.comment(
        "p,n: tokens collected during the span (count); "
        "totalTokenRatio = p/(p+n), nan when p+n=0");
    b.field("run").field("span").field("season").field("p").field("n");
    b.field("totalTokenRatio").field("pn_diff");
    b.end_row();
    for (const SeasonRow& s : rec.seasons) {
        b.field(s.run).field(s.span).field(s.season).field(s.p).field(s.n);
        b.field(s.ratio).field(s.diff);
        b.end_row();
    }
    return b.str();
}

// Executes cfg.runs independent simulations (seed + k for run k) on a pool
// of `parallel` workers and writes one experiment directory: config.txt,
// manifest.json, and per-run epoch/season CSVs plus a final-population
// genome checkpoint. Outputs are byte-identical for a given (config, seed)
// regardless of worker count.
inline std::vector<RunRecord> run_experiment(
    const SimConfig& cfg, const std::filesystem::path& out_dir,
    int parallel = 1) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    const int runs = cfg.runs;
    std::vector<RunRecord> records(static_cast<std::size_t>(runs));
    std::vector<std::string> blobs(static_cast<std::size_t>(runs));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        try {
            while (true) {
                const int k = next.fetch_add(1);
                if (k >= runs) return;
                std::ostringstream blob;
                records[k] = simulate_run(
                    cfg, k, cfg.seed + static_cast<std::uint64_t>(k),
                    [&blob](const World& w) {
                        std::vector<GenomePtr> pop;
                        pop.reserve(w.robots().size());
                        for (const Robot& r : w.robots())
                            pop.push_back(r.evo.current_genome);
                        write_population(blob, pop, RnnTopology{});
                    });
                blobs[k] = blob.str();
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const int pool = std::max(1, std::min(parallel, runs));
    if (pool == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(pool));
        for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    nlohmann::json files_epochs = nlohmann::json::array();
    nlohmann::json files_seasons = nlohmann::json::array();
    nlohmann::json files_genomes = nlohmann::json::array();
    for (int k = 0; k < runs; ++k) {
        const std::string stem = run_stem(k);
        const std::string fe = stem + "_epochs.csv";
        const std::string fs = stem + "_seasons.csv";
        const std::string fg = stem + "_genomes.bin";
        write_file((out_dir / fe).string(), epochs_csv(records[k]));
        write_file((out_dir / fs).string(), seasons_csv(records[k]));
        write_file((out_dir / fg).string(), blobs[k]);
        files_epochs.push_back(fe);
        files_seasons.push_back(fs);
        files_genomes.push_back(fg);
    }

    const std::string config_text = dump_config(cfg);
    write_file((out_dir / "config.txt").string(), config_text);

    char hash_hex[32];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    nlohmann::json manifest;
    manifest["tool"] = "medea";
    manifest["version"] = kVersion;
    manifest["config_hash"] = hash_hex;
    manifest["config_file"] = "config.txt";
    manifest["seed"] = cfg.seed;
    manifest["runs"] = runs;
    manifest["labels"] = {{"environment", environment_label(cfg)},
                          {"season", season_label(cfg)},
                          {"variant", to_string(cfg.variant)}};
    manifest["files"] = {{"epochs", files_epochs},
                         {"seasons", files_seasons},
                         {"genomes", files_genomes}};
    write_file((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");
    return records;
}

// The paper's 3x3x4 factorial grid, one experiment directory per cell,
// named <environment>_<season>_<variant>.
inline std::vector<std::filesystem::path> run_grid(
    const SimConfig& base, const std::filesystem::path& out_dir,
    int parallel = 1) {
    static constexpr const char* kEnvs[] = {"scarce", "balanced", "abundant"};
    static constexpr const char* kSeasons[] = {"static", "fast", "slow"};
    static constexpr const char* kVariants[] = {"baseline", "il", "evo",
                                                "evo_il"};
    std::vector<std::filesystem::path> dirs;
    for (const char* env : kEnvs) {
        for (const char* season : kSeasons) {
            for (const char* variant : kVariants) {
                SimConfig c = base;
                apply_preset(c, env);
                apply_preset(c, season);
                apply_preset(c, variant);
                const std::string name = std::string(env) + "_" + season +
                                         "_" + variant;
                run_experiment(c, out_dir / name, parallel);
                dirs.push_back(out_dir / name);
            }
        }
    }
    return dirs;
}

}  // namespace medea
