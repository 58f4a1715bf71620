#pragma once

#include <stdexcept>
#include <string>

namespace medea {

// The four adaptation variants. They differ in how a multiplier is
// initialised when a token type is first seen, whether the learning rule
// runs at all, and which learning parameters are heritable.
enum class Variant { Baseline, IL, EVO, EVO_IL };

struct VariantTraits {
    bool genome_has_lr = false;           // heritable learning rate
    bool genome_has_ls = false;           // heritable learning sign
    bool genome_has_multipliers = false;  // heritable initial multipliers
    bool learning_enabled = false;        // multiplier update rule runs
};

inline VariantTraits traits_of(Variant v) {
    switch (v) {
        case Variant::Baseline: return {false, false, false, false};
        case Variant::IL:       return {false, true, false, true};
        case Variant::EVO:      return {false, false, true, false};
        case Variant::EVO_IL:   return {true, true, true, true};
    }
    return {};
}

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::Baseline: return "baseline";
        case Variant::IL:       return "il";
        case Variant::EVO:      return "evo";
        case Variant::EVO_IL:   return "evo_il";
    }
    return "?";
}

inline Variant variant_from_string(const std::string& s) {
    if (s == "baseline") return Variant::Baseline;
    if (s == "il") return Variant::IL;
    if (s == "evo") return Variant::EVO;
    if (s == "evo_il" || s == "evo+il") return Variant::EVO_IL;
    throw std::invalid_argument("unknown variant: " + s);
}

}  // namespace medea
