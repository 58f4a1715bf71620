#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "medea/config.hpp"
#include "medea/csv.hpp"
#include "medea/stats.hpp"
#include "medea/world.hpp"

namespace medea {

// One cell of the (token_count, token_value) neutrality surface.
struct SweepCell {
    int count = 0;
    double value = 0.0;
    double median_delta = 0.0;
    bool neutral = false;
};

// Median final energy balance of one short run: the balances accumulated by
// the robots active at the last iteration. End-of-life balances are excluded
// on purpose — a starved robot's balance is pinned near the negated start
// energy whatever the environment, so pooling deaths floors the median and
// hides the sign change. If nothing is active at the end, the run sits deep
// in the negative region; report the end-of-life median instead.
inline double run_cell_delta(const SimConfig& cfg, std::uint64_t seed) {
    World world(cfg, seed);
    for (std::uint64_t t = 0; t < cfg.max_iterations; ++t)
        world.step();

    std::vector<double> pool;
    for (const Robot& r : world.robots())
        if (r.alive())
            pool.push_back(r.evo.delta_energy);
    if (pool.empty())
        for (const EolEvent& ev : world.eol_events())
            pool.push_back(ev.delta_energy);
    if (pool.empty())
        return 0.0;
    return median_of(pool);
}

// Flags neutral cells in a row-major grid: the two cells bracketing each
// row's sign change in median delta-energy, plus any exact zero.
inline void mark_neutral_cells(std::vector<SweepCell>& cells, std::size_t ncols) {
    for (std::size_t row = 0; row * ncols < cells.size(); ++row) {
        SweepCell* r = cells.data() + row * ncols;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (r[c].median_delta == 0.0)
                r[c].neutral = true;
            if (c + 1 < ncols && r[c].median_delta < 0.0 && r[c + 1].median_delta > 0.0) {
                r[c].neutral = true;
                r[c + 1].neutral = true;
            }
        }
    }
}

// Evaluates the full sweep grid with Baseline controllers. Cells are laid out
// row-major (one row per token count, ascending values within the row).
inline std::vector<SweepCell> sweep_neutral_line(const SweepConfig& sweep) {
    sweep.validate();

    SimConfig base = sweep.base;
    base.variant = Variant::Baseline;
    base.max_iterations = sweep.iterations;
    base.runs = sweep.runs;

    std::vector<SweepCell> cells;
    cells.reserve(sweep.counts.size() * sweep.values.size());
    std::size_t cell_index = 0;
    for (int count : sweep.counts) {
        for (double value : sweep.values) {
            SimConfig cfg = base;
            cfg.token_count = count;
            cfg.token_value = value;
            cfg.validate();

            std::vector<double> medians;
            medians.reserve(static_cast<std::size_t>(sweep.runs));
            for (int k = 0; k < sweep.runs; ++k) {
                const std::uint64_t seed =
                    sweep.seed + cell_index * static_cast<std::uint64_t>(sweep.runs) +
                    static_cast<std::uint64_t>(k);
                medians.push_back(run_cell_delta(cfg, seed));
            }

            SweepCell cell;
            cell.count = count;
            cell.value = value;
            cell.median_delta = median_of(medians);
            cells.push_back(cell);
            ++cell_index;
        }
    }

    mark_neutral_cells(cells, sweep.values.size());
    return cells;
}

inline std::string surface_csv(const std::vector<SweepCell>& cells) {
    CsvBuilder b;
    b.comment("count: positive (and negative) tokens per class");
    b.comment("value: energy gained per positive token");
    b.comment(
        "median_delta_E: median energy balance of end-of-run active robots "
        "(median over runs)");
    b.comment("neutral_flag: 1 if the cell brackets the row's zero crossing");
    b.field("count");
    b.field("value");
    b.field("median_delta_E");
    b.field("neutral_flag");
    b.end_row();
    for (const SweepCell& c : cells) {
        b.field(static_cast<std::uint64_t>(c.count));
        b.field(c.value);
        b.field(c.median_delta);
        b.field(static_cast<std::uint64_t>(c.neutral ? 1 : 0));
        b.end_row();
    }
    return b.str();
}

}  // namespace medea
