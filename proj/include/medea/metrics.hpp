#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "medea/world.hpp"

namespace medea {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// Share of positive tokens among all collected; missing when nothing was
// collected.
inline double total_token_ratio(std::uint64_t p, std::uint64_t n) {
    if (p + n == 0) return kMissing;
    return static_cast<double>(p) / static_cast<double>(p + n);
}

// Normalised positive-minus-negative difference in [-1,1]; missing when
// nothing was collected.
inline double pn_diff(std::uint64_t p, std::uint64_t n) {
    if (p + n == 0) return kMissing;
    return (static_cast<double>(p) - static_cast<double>(n)) /
           static_cast<double>(p + n);
}

// One epoch of a run: collection counts during the epoch plus the
// population state at its end. season is the season during the epoch
// (epochs never straddle a season boundary for the stock periods, which
// are multiples of the epoch length).
struct EpochRow {
    int run = 0;
    std::uint64_t epoch = 0;
    int season = 0;
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    double ratio = kMissing;
    double diff = kMissing;
    int alive = 0;
    double mean_energy = kMissing;
};

// One season span of a run (the whole run when the environment is static).
struct SeasonRow {
    int run = 0;
    std::uint64_t span = 0;  // 0,1,2,... in run order
    int season = 0;
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    double ratio = kMissing;
    double diff = kMissing;
};

struct RunRecord {
    int run = 0;
    std::uint64_t seed = 0;
    std::vector<EpochRow> epochs;
    std::vector<SeasonRow> seasons;
    std::vector<EolEvent> eol_events;
    std::uint64_t final_alive = 0;
};

// The metric window used by all comparisons: the mean epoch ratio over the
// final `window` epochs (missing epochs skipped; missing when all are).
inline double window_ratio(const RunRecord& rec, std::size_t window = 2) {
    double sum = 0.0;
    std::size_t count = 0;
    const std::size_t n = rec.epochs.size();
    const std::size_t from = n > window ? n - window : 0;
    for (std::size_t i = from; i < n; ++i) {
        if (!is_missing(rec.epochs[i].ratio)) {
            sum += rec.epochs[i].ratio;
            ++count;
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : kMissing;
}

inline double window_diff(const RunRecord& rec, std::size_t window = 2) {
    double sum = 0.0;
    std::size_t count = 0;
    const std::size_t n = rec.epochs.size();
    const std::size_t from = n > window ? n - window : 0;
    for (std::size_t i = from; i < n; ++i) {
        if (!is_missing(rec.epochs[i].diff)) {
            sum += rec.epochs[i].diff;
            ++count;
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : kMissing;
}

// Runs one seeded simulation to completion, sampling epoch rows at every
// epoch boundary and season rows at season changes. Only complete epochs
// are recorded; a trailing partial season span is. final_hook (optional)
// receives the world after the last iteration, for checkpointing.
template <typename FinalHook>
inline RunRecord simulate_run(const SimConfig& cfg, int run_index,
                              std::uint64_t seed, FinalHook&& final_hook) {
    World world(cfg, seed);
    RunRecord rec;
    rec.run = run_index;
    rec.seed = seed;

    std::uint64_t epoch_p0 = 0, epoch_n0 = 0;
    std::uint64_t season_p0 = 0, season_n0 = 0;
    std::uint64_t span = 0;

    const SeasonSchedule& sched = world.schedule();
    for (std::uint64_t t = 0; t < cfg.max_iterations; ++t) {
        world.step();
        const std::uint64_t done = world.iteration();

        if (done % cfg.epoch_length == 0) {
            const std::uint64_t epoch = done / cfg.epoch_length - 1;
            EpochRow row;
            row.run = run_index;
            row.epoch = epoch;
            row.season = sched.season_at(epoch * cfg.epoch_length);
            row.p = world.collected_positive() - epoch_p0;
            row.n = world.collected_negative() - epoch_n0;
            row.ratio = total_token_ratio(row.p, row.n);
            row.diff = pn_diff(row.p, row.n);
            row.alive = world.alive_count();
            row.mean_energy = world.mean_alive_energy();
            rec.epochs.push_back(row);
            epoch_p0 = world.collected_positive();
            epoch_n0 = world.collected_negative();
        }

        const bool last = done == cfg.max_iterations;
        const bool full_span = sched.period > 0 && done % sched.period == 0;
        const bool partial_tail =
            last && (sched.period == 0 || done % sched.period != 0);
        if (full_span || partial_tail) {
            const std::uint64_t start =
                full_span ? done - sched.period
                          : (sched.period > 0 ? done - done % sched.period : 0);
            SeasonRow row;
            row.run = run_index;
            row.span = span++;
            row.season = sched.season_at(start);
            row.p = world.collected_positive() - season_p0;
            row.n = world.collected_negative() - season_n0;
            row.ratio = total_token_ratio(row.p, row.n);
            row.diff = pn_diff(row.p, row.n);
            rec.seasons.push_back(row);
            season_p0 = world.collected_positive();
            season_n0 = world.collected_negative();
        }
    }
    rec.eol_events = world.eol_events();
    rec.final_alive = static_cast<std::uint64_t>(world.alive_count());
    final_hook(world);
    return rec;
}

inline RunRecord simulate_run(const SimConfig& cfg, int run_index,
                              std::uint64_t seed) {
    return simulate_run(cfg, run_index, seed, [](const World&) {});
}

}  // namespace medea
