#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "medea/geometry.hpp"
#include "medea/rng.hpp"
#include "medea/variant.hpp"

namespace medea {

// Elman network topology. The input vector carries, per ray, a proximity
// entry and a (multiplier-modulated) token entry.
struct RnnTopology {
    int inputs = 16;
    int hidden = 16;
    int outputs = 2;

    int weight_count() const {
        return hidden * inputs + hidden * hidden + hidden +
               outputs * hidden + outputs;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (std::uint64_t v : {static_cast<std::uint64_t>(inputs),
                                static_cast<std::uint64_t>(hidden),
                                static_cast<std::uint64_t>(outputs)}) {
            h = (h ^ v) * 1099511628211ull;
        }
        return h;
    }
};

struct LearnRanges {
    double lr_min = 1.0;
    double lr_max = 1.5;
    double lr_init = 1.02;
};

// Heritable unit: the flat weight vector plus, depending on the variant,
// the learning parameters and per-type initial multipliers. Immutable after
// construction; shared between robots by pointer.
struct Genome {
    std::uint64_t id = 0;
    Variant variant = Variant::Baseline;
    std::vector<double> weights;

    // Present only when traits_of(variant) says so.
    double learn_lr = 0.0;
    double learn_ls = 0.0;
    std::vector<std::pair<int, double>> init_multipliers;  // (type_id, value)

    const double* multiplier_for(int type_id) const {
        for (const auto& [t, m] : init_multipliers) {
            if (t == type_id) return &m;
        }
        return nullptr;
    }
};

using GenomePtr = std::shared_ptr<const Genome>;

// Fresh random genome: weights uniform in [-1,1]; learning fields at their
// initial values (LR at its table value, LS and multipliers random).
inline Genome random_genome(std::uint64_t id, Variant variant,
                            const RnnTopology& topo, int token_types,
                            const LearnRanges& lr, Rng& rng) {
    Genome g;
    g.id = id;
    g.variant = variant;
    g.weights.resize(static_cast<std::size_t>(topo.weight_count()));
    for (double& w : g.weights) w = rng.uniform(-1.0, 1.0);
    const VariantTraits t = traits_of(variant);
    if (t.genome_has_lr) g.learn_lr = lr.lr_init;
    if (t.genome_has_ls) g.learn_ls = rng.uniform(-1.0, 1.0);
    if (t.genome_has_multipliers) {
        g.init_multipliers.reserve(static_cast<std::size_t>(token_types));
        for (int type = 0; type < token_types; ++type) {
            g.init_multipliers.emplace_back(type, rng.uniform(-1.0, 1.0));
        }
    }
    return g;
}

// Gaussian mutation of every heritable value, with the learning fields
// clamped back into their ranges. The parent is untouched.
inline Genome apply_variation(const Genome& parent, double sigma,
                              const LearnRanges& lr, Rng& rng,
                              std::uint64_t child_id) {
    Genome child = parent;
    child.id = child_id;
    for (double& w : child.weights) w += rng.normal(0.0, sigma);
    const VariantTraits t = traits_of(parent.variant);
    if (t.genome_has_lr) {
        child.learn_lr = clamp(parent.learn_lr + rng.normal(0.0, sigma),
                               lr.lr_min, lr.lr_max);
    }
    if (t.genome_has_ls) {
        child.learn_ls =
            clamp(parent.learn_ls + rng.normal(0.0, sigma), -1.0, 1.0);
    }
    for (auto& [type, m] : child.init_multipliers) {
        m = clamp(m + rng.normal(0.0, sigma), -1.0, 1.0);
    }
    return child;
}

// Recurrent hidden state; reset to zeros whenever a genome is activated.
struct ElmanState {
    std::array<double, 16> context{};

    void reset() { context.fill(0.0); }
};

struct MotorCommand {
    double v_trans_cmd = 0.0;  // [0,1]
    double v_rot_cmd = 0.0;    // [-1,1]
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// One Elman step: hidden = tanh(W_ih x + W_hh c + b_h), outputs from the
// hidden layer (sigmoid for translation, tanh for rotation), context
// replaced by the new hidden activations.
//
// Weight layout: [W_ih (h x in), W_hh (h x h), b_h, W_ho (out x h), b_o].
inline MotorCommand forward(const Genome& genome, ElmanState& state,
                            std::span<const double> inputs,
                            const RnnTopology& topo) {
    const double* w = genome.weights.data();
    const int ni = topo.inputs;
    const int nh = topo.hidden;
    const double* w_ih = w;
    const double* w_hh = w + nh * ni;
    const double* b_h = w_hh + nh * nh;
    const double* w_ho = b_h + nh;
    const double* b_o = w_ho + topo.outputs * nh;

    std::array<double, 16> hidden;
    for (int j = 0; j < nh; ++j) {
        double acc = b_h[j];
        const double* row_i = w_ih + j * ni;
        for (int i = 0; i < ni; ++i) acc += row_i[i] * inputs[i];
        const double* row_h = w_hh + j * nh;
        for (int k = 0; k < nh; ++k) acc += row_h[k] * state.context[k];
        hidden[j] = std::tanh(acc);
    }

    double out0 = b_o[0];
    double out1 = b_o[1];
    for (int j = 0; j < nh; ++j) {
        out0 += w_ho[j] * hidden[j];
        out1 += w_ho[nh + j] * hidden[j];
    }

    for (int j = 0; j < nh; ++j) state.context[j] = hidden[j];

    return {sigmoid(out0), std::tanh(out1)};
}

}  // namespace medea
