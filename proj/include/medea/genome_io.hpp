#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "medea/controller.hpp"

namespace medea {

// Binary genome format: a small header (magic, version, variant flags,
// topology hash) followed by the flat little-endian real array. Used for
// run checkpoints.
namespace detail {

inline void put_u8(std::ostream& os, std::uint8_t v) {
    os.put(static_cast<char>(v));
}

inline void put_u32(std::ostream& os, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) put_u8(os, static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) put_u8(os, static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::ostream& os, double v) {
    put_u64(os, std::bit_cast<std::uint64_t>(v));
}

inline std::uint8_t get_u8(std::istream& is) {
    int c = is.get();
    if (c == EOF) throw std::runtime_error("genome blob truncated");
    return static_cast<std::uint8_t>(c);
}

inline std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(get_u8(is)) << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(get_u8(is)) << (8 * i);
    return v;
}

inline double get_f64(std::istream& is) {
    return std::bit_cast<double>(get_u64(is));
}

}  // namespace detail

inline constexpr std::uint32_t kGenomeMagic = 0x4e47444d;  // "MDGN"
inline constexpr std::uint32_t kGenomeVersion = 1;

enum GenomeFlags : std::uint32_t {
    kHasLearnRate = 1u << 0,
    kHasLearnSign = 1u << 1,
    kHasMultipliers = 1u << 2,
};

inline void write_genome(std::ostream& os, const Genome& g,
                         const RnnTopology& topo) {
    using namespace detail;
    const VariantTraits t = traits_of(g.variant);
    std::uint32_t flags = 0;
    if (t.genome_has_lr) flags |= kHasLearnRate;
    if (t.genome_has_ls) flags |= kHasLearnSign;
    if (t.genome_has_multipliers) flags |= kHasMultipliers;

    put_u32(os, kGenomeMagic);
    put_u32(os, kGenomeVersion);
    put_u64(os, topo.hash());
    put_u32(os, static_cast<std::uint32_t>(g.variant));
    put_u32(os, flags);
    put_u64(os, g.id);
    put_u32(os, static_cast<std::uint32_t>(g.weights.size()));
    put_u32(os, static_cast<std::uint32_t>(g.init_multipliers.size()));
    for (double w : g.weights) put_f64(os, w);
    if (flags & kHasLearnRate) put_f64(os, g.learn_lr);
    if (flags & kHasLearnSign) put_f64(os, g.learn_ls);
    for (const auto& [type, m] : g.init_multipliers) {
        put_u32(os, static_cast<std::uint32_t>(type));
        put_f64(os, m);
    }
}

inline Genome read_genome(std::istream& is, const RnnTopology& topo) {
    using namespace detail;
    if (get_u32(is) != kGenomeMagic) throw std::runtime_error("bad genome magic");
    if (get_u32(is) != kGenomeVersion) throw std::runtime_error("bad genome version");
    if (get_u64(is) != topo.hash()) throw std::runtime_error("genome topology mismatch");
    Genome g;
    g.variant = static_cast<Variant>(get_u32(is));
    const std::uint32_t flags = get_u32(is);
    g.id = get_u64(is);
    const std::uint32_t nw = get_u32(is);
    const std::uint32_t nm = get_u32(is);
    if (nw != static_cast<std::uint32_t>(topo.weight_count())) {
        throw std::runtime_error("genome weight count mismatch");
    }
    g.weights.resize(nw);
    for (double& w : g.weights) w = get_f64(is);
    if (flags & kHasLearnRate) g.learn_lr = get_f64(is);
    if (flags & kHasLearnSign) g.learn_ls = get_f64(is);
    g.init_multipliers.resize(nm);
    for (auto& [type, m] : g.init_multipliers) {
        type = static_cast<int>(get_u32(is));
        m = get_f64(is);
    }
    return g;
}

// Checkpoint of a whole population: per robot either a genome or an
// absent marker (robot listening with no active genome).
inline void write_population(std::ostream& os,
                             const std::vector<GenomePtr>& genomes,
                             const RnnTopology& topo) {
    detail::put_u32(os, static_cast<std::uint32_t>(genomes.size()));
    for (const auto& g : genomes) {
        detail::put_u8(os, g ? 1 : 0);
        if (g) write_genome(os, *g, topo);
    }
}

inline std::vector<GenomePtr> read_population(std::istream& is,
                                              const RnnTopology& topo) {
    const std::uint32_t n = detail::get_u32(is);
    std::vector<GenomePtr> out(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (detail::get_u8(is)) {
            out[i] = std::make_shared<const Genome>(read_genome(is, topo));
        }
    }
    return out;
}

}  // namespace medea
