#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "medea/energy.hpp"
#include "medea/learning.hpp"
#include "medea/sensing.hpp"
#include "medea/variant.hpp"

namespace medea {

inline std::string value_scope_to_string(ValueScope s) {
    return s == ValueScope::Consumed ? "consumed" : "per_type";
}

inline ValueScope value_scope_from_string(std::string_view s) {
    if (s == "per_type") return ValueScope::PerType;
    if (s == "consumed") return ValueScope::Consumed;
    throw std::invalid_argument("unknown value scope: " + std::string(s));
}

// Full experiment configuration: one variant in one environment, `runs`
// seeded repetitions. Serialized as flat dotted keys, one `key = value`
// per line.
struct SimConfig {
    // experiment
    Variant variant = Variant::Baseline;
    int runs = 30;
    std::uint64_t seed = 1;
    std::uint64_t max_iterations = 1'000'000;
    std::uint64_t epoch_length = 5000;

    // environment
    int token_count = 625;
    double token_value = 625.0;
    double negative_value = -400.0;
    std::uint64_t season_period = 0;

    // world
    int robots = 100;
    double arena_width = 1024.0;
    double arena_height = 1024.0;
    double robot_radius = 4.0;
    double token_radius = 4.0;
    double v_trans_max = 2.0;
    double v_rot_max = 0.1745;
    double sensor_range = 196.0;
    double comm_range = 128.0;
    std::uint64_t token_respawn = 500;
    std::uint64_t max_lifetime = 2500;
    double start_energy = 500.0;
    int broadcast_every = 1;
    std::vector<double> ray_angles_deg{std::begin(kDefaultRayAnglesDeg),
                                       std::end(kDefaultRayAnglesDeg)};

    // energy
    EnergyParams energy{};

    // learning
    double lr_fixed = 1.02;
    double lr_min = 1.0;
    double lr_max = 1.5;
    ValueScope value_scope = ValueScope::PerType;
    double mutation_sigma = 0.1;

    int token_types() const { return 2; }

    LearnRanges learn_ranges() const { return {lr_min, lr_max, lr_fixed}; }

    void validate() const {
        if (robots < 1) throw std::invalid_argument("world.robots must be >= 1");
        if (runs < 1) throw std::invalid_argument("experiment.runs must be >= 1");
        if (token_count < 0)
            throw std::invalid_argument("environment.token_count must be >= 0");
        if (epoch_length == 0)
            throw std::invalid_argument("experiment.epoch_length must be > 0");
        if (arena_width <= 0 || arena_height <= 0)
            throw std::invalid_argument("arena dimensions must be positive");
        if (lr_min > lr_max)
            throw std::invalid_argument("learning.lr_min must be <= lr_max");
        if (broadcast_every < 1)
            throw std::invalid_argument("world.broadcast_every must be >= 1");
        if (ray_angles_deg.empty())
            throw std::invalid_argument("sensing.ray_angles_deg must be nonempty");
    }
};

// Sweep over (token count, token value) cells, baseline variant. The axes
// are explicit ascending lists so the stock environments can sit exactly on
// grid rows. Counts below ~300 are omitted by default: with the swarm mostly
// starving, the end-of-run balance is floor noise and the surface carries no
// signal there.
struct SweepConfig {
    std::vector<int> counts{300, 625, 900, 1150};
    std::vector<double> values{100.0, 250.0, 425.0, 625.0,
                               850.0, 1150.0, 1300.0};
    std::uint64_t iterations = 20'000;
    int runs = 5;
    std::uint64_t seed = 1;
    SimConfig base{};  // world/energy knobs reused per cell

    void validate() const {
        if (counts.empty() || values.empty())
            throw std::invalid_argument("sweep axes must be nonempty");
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] <= 0 || (i > 0 && counts[i] <= counts[i - 1]))
                throw std::invalid_argument(
                    "sweep.counts must be positive and ascending");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] <= 0.0 || (i > 0 && values[i] <= values[i - 1]))
                throw std::invalid_argument(
                    "sweep.values must be positive and ascending");
        }
        if (runs < 1) throw std::invalid_argument("sweep.runs must be >= 1");
        if (iterations == 0)
            throw std::invalid_argument("sweep.iterations must be > 0");
    }
};

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number: " + std::string(s));
    return v;
}

inline std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer: " + std::string(s));
    return v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::string format_list(const std::vector<double>& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += format_double(a[i]);
    }
    return out;
}

inline std::vector<double> parse_list(std::string_view s) {
    std::vector<double> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        out.push_back(parse_double(trim(s.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace detail

// Canonical dump: fixed key order, shortest round-trip number formatting.
// Parsing the dump reproduces the config exactly.
inline std::string dump_config(const SimConfig& c) {
    using detail::format_double;
    std::string out;
    auto put = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("experiment.variant", to_string(c.variant));
    put("experiment.runs", std::to_string(c.runs));
    put("experiment.seed", std::to_string(c.seed));
    put("experiment.max_iterations", std::to_string(c.max_iterations));
    put("experiment.epoch_length", std::to_string(c.epoch_length));
    put("environment.token_count", std::to_string(c.token_count));
    put("environment.token_value", format_double(c.token_value));
    put("environment.negative_value", format_double(c.negative_value));
    put("environment.season_period", std::to_string(c.season_period));
    put("world.robots", std::to_string(c.robots));
    put("world.arena_width", format_double(c.arena_width));
    put("world.arena_height", format_double(c.arena_height));
    put("world.robot_radius", format_double(c.robot_radius));
    put("world.token_radius", format_double(c.token_radius));
    put("world.v_trans_max", format_double(c.v_trans_max));
    put("world.v_rot_max", format_double(c.v_rot_max));
    put("world.sensor_range", format_double(c.sensor_range));
    put("world.comm_range", format_double(c.comm_range));
    put("world.token_respawn", std::to_string(c.token_respawn));
    put("world.max_lifetime", std::to_string(c.max_lifetime));
    put("world.start_energy", format_double(c.start_energy));
    put("world.broadcast_every", std::to_string(c.broadcast_every));
    put("sensing.ray_angles_deg", detail::format_list(c.ray_angles_deg));
    put("energy.living_cost", format_double(c.energy.living_cost));
    put("energy.a_rx", format_double(c.energy.a_rx));
    put("energy.a_tx", format_double(c.energy.a_tx));
    put("energy.a_tx_amp", format_double(c.energy.a_tx_amp));
    put("learning.lr_fixed", format_double(c.lr_fixed));
    put("learning.lr_min", format_double(c.lr_min));
    put("learning.lr_max", format_double(c.lr_max));
    put("learning.value_scope", value_scope_to_string(c.value_scope));
    put("learning.mutation_sigma", format_double(c.mutation_sigma));
    return out;
}

inline bool apply_config_key(SimConfig& c, std::string_view key,
                             std::string_view value) {
    using detail::parse_double;
    using detail::parse_int;
    const std::string v(value);
    if (key == "experiment.variant") c.variant = variant_from_string(v);
    else if (key == "experiment.runs") c.runs = static_cast<int>(parse_int(v));
    else if (key == "experiment.seed") c.seed = static_cast<std::uint64_t>(parse_int(v));
    else if (key == "experiment.max_iterations")
        c.max_iterations = static_cast<std::uint64_t>(parse_int(v));
    else if (key == "experiment.epoch_length")
        c.epoch_length = static_cast<std::uint64_t>(parse_int(v));
    else if (key == "environment.token_count")
        c.token_count = static_cast<int>(parse_int(v));
    else if (key == "environment.token_value") c.token_value = parse_double(v);
    else if (key == "environment.negative_value") c.negative_value = parse_double(v);
    else if (key == "environment.season_period")
        c.season_period = static_cast<std::uint64_t>(parse_int(v));
    else if (key == "world.robots") c.robots = static_cast<int>(parse_int(v));
    else if (key == "world.arena_width") c.arena_width = parse_double(v);
    else if (key == "world.arena_height") c.arena_height = parse_double(v);
    else if (key == "world.robot_radius") c.robot_radius = parse_double(v);
    else if (key == "world.token_radius") c.token_radius = parse_double(v);
    else if (key == "world.v_trans_max") c.v_trans_max = parse_double(v);
    else if (key == "world.v_rot_max") c.v_rot_max = parse_double(v);
    else if (key == "world.sensor_range") c.sensor_range = parse_double(v);
    else if (key == "world.comm_range") c.comm_range = parse_double(v);
    else if (key == "world.token_respawn")
        c.token_respawn = static_cast<std::uint64_t>(parse_int(v));
    else if (key == "world.max_lifetime")
        c.max_lifetime = static_cast<std::uint64_t>(parse_int(v));
    else if (key == "world.start_energy") c.start_energy = parse_double(v);
    else if (key == "world.broadcast_every")
        c.broadcast_every = static_cast<int>(parse_int(v));
    else if (key == "sensing.ray_angles_deg")
        c.ray_angles_deg = detail::parse_list(v);
    else if (key == "energy.living_cost") c.energy.living_cost = parse_double(v);
    else if (key == "energy.a_rx") c.energy.a_rx = parse_double(v);
    else if (key == "energy.a_tx") c.energy.a_tx = parse_double(v);
    else if (key == "energy.a_tx_amp") c.energy.a_tx_amp = parse_double(v);
    else if (key == "learning.lr_fixed") c.lr_fixed = parse_double(v);
    else if (key == "learning.lr_min") c.lr_min = parse_double(v);
    else if (key == "learning.lr_max") c.lr_max = parse_double(v);
    else if (key == "learning.value_scope")
        c.value_scope = value_scope_from_string(v);
    else if (key == "learning.mutation_sigma") c.mutation_sigma = parse_double(v);
    else return false;
    return true;
}

inline bool apply_sweep_key(SweepConfig& c, std::string_view key,
                            std::string_view value) {
    using detail::parse_int;
    const std::string v(value);
    if (key == "sweep.counts") {
        c.counts.clear();
        for (double d : detail::parse_list(v))
            c.counts.push_back(static_cast<int>(d));
    } else if (key == "sweep.values") {
        c.values = detail::parse_list(v);
    } else if (key == "sweep.iterations") {
        c.iterations = static_cast<std::uint64_t>(parse_int(v));
    } else if (key == "sweep.runs") {
        c.runs = static_cast<int>(parse_int(v));
    } else if (key == "sweep.seed") {
        c.seed = static_cast<std::uint64_t>(parse_int(v));
    } else {
        return apply_config_key(c.base, key, value);
    }
    return true;
}

// Parses `key = value` lines; '#' starts a comment, blank lines skipped.
// Unknown keys throw (catching config typos beats ignoring them).
template <typename ApplyFn>
inline void parse_flat_config(std::string_view text, ApplyFn&& apply) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (!apply(key, value))
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + std::string(key) + "'");
    }
}

inline SimConfig parse_config(std::string_view text,
                              SimConfig base = SimConfig{}) {
    parse_flat_config(text, [&base](std::string_view k, std::string_view v) {
        return apply_config_key(base, k, v);
    });
    return base;
}

inline SweepConfig parse_sweep_config(std::string_view text,
                                      SweepConfig base = SweepConfig{}) {
    parse_flat_config(text, [&base](std::string_view k, std::string_view v) {
        return apply_sweep_key(base, k, v);
    });
    return base;
}

// FNV-1a over the canonical dump; identifies a config in manifests.
inline std::uint64_t config_hash(const SimConfig& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : dump_config(c)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

// Named presets compose left to right: scale (desk/paper), environment,
// season, variant. E.g. "desk,abundant,static,evo_il".
inline void apply_preset(SimConfig& c, std::string_view name) {
    if (name == "desk") {
        c.robots = 50;
        c.max_iterations = 100'000;
        c.runs = 10;
    } else if (name == "paper") {
        c.robots = 100;
        c.max_iterations = 1'000'000;
        c.runs = 30;
    } else if (name == "scarce") {
        c.token_count = 300;
        c.token_value = 1150.0;
    } else if (name == "balanced") {
        c.token_count = 625;
        c.token_value = 625.0;
    } else if (name == "abundant") {
        c.token_count = 1150;
        c.token_value = 425.0;
    } else if (name == "static") {
        c.season_period = 0;
    } else if (name == "fast") {
        c.season_period = 5000;
    } else if (name == "slow") {
        c.season_period = 15000;
    } else if (name == "baseline" || name == "il" || name == "evo" ||
               name == "evo_il" || name == "evo+il") {
        c.variant = variant_from_string(std::string(name));
    } else {
        throw std::invalid_argument("unknown preset: " + std::string(name));
    }
}

inline void apply_presets(SimConfig& c, std::string_view list) {
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto name = detail::trim(list.substr(0, comma));
        if (!name.empty()) apply_preset(c, name);
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
}

}  // namespace medea
