#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "medea/controller.hpp"
#include "medea/geometry.hpp"
#include "medea/rng.hpp"
#include "medea/sensing.hpp"
#include "medea/variant.hpp"

namespace medea {

// Which token value enters the update rule for multipliers other than the
// type just consumed: each type's own last observed value (PerType), or the
// value of the token just consumed (Consumed).
enum class ValueScope { PerType, Consumed };

// Core multiplier update rule. C_x / C_total use the counters as of after
// the triggering consumption; value_ratio degenerates to 0 when every token
// seen so far had the same value.
inline double multiplier_update_rule(double m, double ls_sign, double lr,
                                     std::uint64_t c_x, std::uint64_t c_total,
                                     double v_x, double v_max, double v_min) {
    const double range = v_max - v_min;
    const double value_ratio = range > 0.0 ? v_x / range : 0.0;
    const double share = static_cast<double>(c_x) / static_cast<double>(c_total);
    return clamp(m + ls_sign * (lr - share) * value_ratio, -1.0, 1.0);
}

// Per-robot, per-activation learning state: one multiplier per token type
// seen so far, consumption counters, and the observed value statistics. The
// adapted values live only here; they are never written back to the genome.
class MultiplierSet {
public:
    struct Entry {
        int type_id = 0;
        double multiplier = 0.0;
        std::uint64_t consumed = 0;
        double last_value = 0.0;
    };

    // Resolves the variant policy against the activated genome.
    void reset(Variant variant, const Genome& genome, double lr_fixed,
               ValueScope scope) {
        entries_.clear();
        c_total_ = 0;
        v_max_ = -std::numeric_limits<double>::infinity();
        v_min_ = std::numeric_limits<double>::infinity();
        variant_ = variant;
        scope_ = scope;
        const VariantTraits t = traits_of(variant);
        learning_enabled_ = t.learning_enabled;
        lr_ = t.genome_has_lr ? genome.learn_lr : lr_fixed;
        ls_sign_ = t.genome_has_ls ? (genome.learn_ls >= 0.0 ? 1.0 : -1.0) : 1.0;
    }

    // Registers a token type on first sight (by ray or by consumption) and
    // returns its multiplier. Initial value per variant: 1 for Baseline,
    // random for IL, inherited (or fresh random when the genome lacks the
    // type) for EVO / EVO+IL.
    double on_token_detected(int type_id, const Genome& genome, Rng& rng) {
        if (Entry* e = find(type_id)) return e->multiplier;
        double init = 1.0;
        switch (variant_) {
            case Variant::Baseline:
                init = 1.0;
                break;
            case Variant::IL:
                init = rng.uniform(-1.0, 1.0);
                break;
            case Variant::EVO:
            case Variant::EVO_IL:
                if (const double* m = genome.multiplier_for(type_id)) {
                    init = *m;
                } else {
                    init = rng.uniform(-1.0, 1.0);
                }
                break;
        }
        entries_.push_back({type_id, init, 0, 0.0});
        return init;
    }

    // Consumption: update counters and value statistics, then (when the
    // variant learns) run the update rule over every multiplier. Types never
    // consumed are skipped: no value has been observed for them.
    void on_token_consumed(int type_id, double observed_value) {
        Entry* e = find(type_id);
        e->consumed += 1;
        e->last_value = observed_value;
        c_total_ += 1;
        if (observed_value > v_max_) v_max_ = observed_value;
        if (observed_value < v_min_) v_min_ = observed_value;
        if (!learning_enabled_) return;
        for (Entry& x : entries_) {
            if (x.consumed == 0) continue;
            const double v_x =
                scope_ == ValueScope::PerType ? x.last_value : observed_value;
            x.multiplier = multiplier_update_rule(
                x.multiplier, ls_sign_, lr_, x.consumed, c_total_, v_x,
                v_max_, v_min_);
        }
    }

    double multiplier(int type_id) const {
        for (const Entry& e : entries_) {
            if (e.type_id == type_id) return e.multiplier;
        }
        return 0.0;
    }

    bool knows(int type_id) const {
        for (const Entry& e : entries_) {
            if (e.type_id == type_id) return true;
        }
        return false;
    }

    std::uint64_t total_consumed() const { return c_total_; }
    const std::vector<Entry>& entries() const { return entries_; }
    double learning_rate() const { return lr_; }
    double learning_sign() const { return ls_sign_; }

private:
    Entry* find(int type_id) {
        for (Entry& e : entries_) {
            if (e.type_id == type_id) return &e;
        }
        return nullptr;
    }

    std::vector<Entry> entries_;
    std::uint64_t c_total_ = 0;
    double v_max_ = 0.0;
    double v_min_ = 0.0;
    double lr_ = 0.0;
    double ls_sign_ = 1.0;
    bool learning_enabled_ = false;
    Variant variant_ = Variant::Baseline;
    ValueScope scope_ = ValueScope::PerType;
};

// Controller input vector: per ray the raw proximity, then per ray the
// token channel scaled by that type's current multiplier. Every ray with a
// token hit must have been registered via on_token_detected beforehand.
inline std::array<double, 2 * kRayCount> modulate_inputs(
    const SensorFrame& frame, const MultiplierSet& set) {
    std::array<double, 2 * kRayCount> in{};
    for (int r = 0; r < kRayCount; ++r) {
        in[r] = frame[r].proximity;
        in[kRayCount + r] =
            frame[r].is_token
                ? frame[r].proximity * set.multiplier(frame[r].token_type)
                : 0.0;
    }
    return in;
}

}  // namespace medea
