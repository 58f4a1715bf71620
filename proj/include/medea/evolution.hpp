#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "medea/controller.hpp"
#include "medea/rng.hpp"

namespace medea {

// Relative fitness: the robot's energy balance standardised against the
// subpopulation currently in communication range (population sd, which is
// well defined down to a single member; sd == 0 maps to 0 by convention).
inline double relative_fitness(double delta_i,
                               std::span<const double> subpop_deltas) {
    const std::size_t n = subpop_deltas.size();
    bool all_equal = true;
    for (double d : subpop_deltas) all_equal &= d == subpop_deltas[0];
    if (all_equal) return 0.0;  // no spread, regardless of rounding
    double mean = 0.0;
    for (double d : subpop_deltas) mean += d;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double d : subpop_deltas) var += (d - mean) * (d - mean);
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (sd == 0.0) return 0.0;
    return (delta_i - mean) / sd;
}

// A received (genome, relative fitness) pair. The list keeps the first
// delivery of each genome id.
struct ReceivedGenome {
    GenomePtr genome;
    double fitness = 0.0;
};

class GenomeList {
public:
    // Returns true when the genome was new.
    bool add_if_unique(const GenomePtr& genome, double fitness) {
        for (const ReceivedGenome& r : entries_) {
            if (r.genome->id == genome->id) return false;
        }
        entries_.push_back({genome, fitness});
        return true;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<ReceivedGenome>& entries() const { return entries_; }
    void clear() { entries_.clear(); }

private:
    std::vector<ReceivedGenome> entries_;
};

// Roulette-wheel index over fitness values shifted so the worst entry keeps
// a vanishing but nonzero weight: w_k = f_k - min(f) + eps. Equal fitness
// degenerates to a uniform choice.
inline std::size_t roulette_select(std::span<const double> fitness, Rng& rng,
                                   double eps = 1e-6) {
    double min_f = fitness[0];
    for (double f : fitness) min_f = f < min_f ? f : min_f;
    double total = 0.0;
    for (double f : fitness) total += f - min_f + eps;
    const double pick = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < fitness.size(); ++k) {
        acc += fitness[k] - min_f + eps;
        if (pick < acc) return k;
    }
    return fitness.size() - 1;
}

// Per-robot protocol state. delta_energy is the pre-clamp balance since the
// current genome's activation.
struct EvolutionState {
    GenomePtr current_genome;
    std::uint64_t lifetime = 0;
    double delta_energy = 0.0;
    GenomeList genome_list;

    bool has_genome() const { return current_genome != nullptr; }
};

}  // namespace medea
