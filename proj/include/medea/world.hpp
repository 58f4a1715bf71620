#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "medea/arena.hpp"
#include "medea/config.hpp"
#include "medea/controller.hpp"
#include "medea/energy.hpp"
#include "medea/evolution.hpp"
#include "medea/geometry.hpp"
#include "medea/learning.hpp"
#include "medea/rng.hpp"
#include "medea/sensing.hpp"
#include "medea/spatial.hpp"

namespace medea {

// Embodied agent. The body (pose, energy) persists across genome
// activations; the protocol and learning state belong to the active genome.
// A robot without a genome is inert: it neither moves nor broadcasts, but
// its body still occupies space and its list keeps receiving genomes.
struct Robot {
    Vec2 pos;
    double heading = 0.0;
    double energy = 0.0;
    double v_trans = 0.0;  // scaled speeds commanded this iteration
    double v_rot = 0.0;
    EvolutionState evo;
    MultiplierSet learner;
    ElmanState context;

    bool alive() const { return evo.has_genome(); }
};

// Recorded when a genome reaches end of life; delta_energy is the balance
// over its whole activation.
struct EolEvent {
    std::uint64_t iteration = 0;
    double delta_energy = 0.0;
    bool starved = false;  // true: energy hit 0; false: lifetime exhausted
};

// The simulated world. step() advances one iteration in fixed phases:
// season update, token respawn, robot actions (sense/move/consume, in index
// order), synchronous genome broadcast, energy accounting, then delivery
// and genome replacement. Broadcasts are computed against a single snapshot
// (post-move positions, pre-update energies) so delivery is independent of
// robot ordering.
class World {
public:
    World(const SimConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
        cfg_.validate();
        if (cfg_.ray_angles_deg.size() != static_cast<std::size_t>(kRayCount))
            throw std::invalid_argument("sensing.ray_angles_deg must list 8 angles");
        arena_ = {cfg_.arena_width, cfg_.arena_height};
        schedule_ = {static_cast<std::uint32_t>(cfg_.season_period)};
        energy_ = cfg_.energy;
        energy_.v_trans_max = cfg_.v_trans_max;
        energy_.v_rot_max = cfg_.v_rot_max;
        energy_.token_negative = cfg_.negative_value;
        energy_.start_energy = cfg_.start_energy;
        ranges_ = cfg_.learn_ranges();
        for (int k = 0; k < kRayCount; ++k)
            ray_base_[k] = unit_from_angle(cfg_.ray_angles_deg[k] * kDegToRad);

        grid_ = UniformGrid(arena_.width, arena_.height, 64.0);
        robots_.resize(static_cast<std::size_t>(cfg_.robots));
        for (std::size_t i = 0; i < robots_.size(); ++i) {
            robots_[i].pos = random_pos(cfg_.robot_radius);
            robots_[i].heading = rng_.uniform(-kPi, kPi);
            auto g = std::make_shared<const Genome>(
                random_genome(next_genome_id_++, cfg_.variant, topo_,
                              cfg_.token_types(), ranges_, rng_));
            activate(i, std::move(g));
        }
        tokens_.reserve(static_cast<std::size_t>(2 * cfg_.token_count));
        for (int type = 0; type < cfg_.token_types(); ++type) {
            for (int k = 0; k < cfg_.token_count; ++k) {
                Token t;
                t.type_id = type;
                t.pos = random_pos(cfg_.token_radius);
                t.value = token_value(type, season_, cfg_.token_value,
                                      cfg_.negative_value);
                grid_.insert(tokens_.size(), t.pos);
                tokens_.push_back(t);
            }
        }
        rx_.assign(robots_.size(), 0);
        tx_.resize(robots_.size());
        inbox_.resize(robots_.size());
        gains_.resize(robots_.size());
    }

    void step() {
        update_season();
        respawn_tokens();
        act_phase();
        broadcast_phase();
        energy_phase();
        replacement_phase();
        ++iteration_;
    }

    // Ray sensing for one robot against the current world. Nearest hit per
    // ray wins; walls and robot bodies are non-token hits. Hit distance is
    // the projection of the disc centre onto the ray.
    SensorFrame cast_rays(std::size_t i) const {
        const Robot& r = robots_[i];
        std::array<Vec2, kRayCount> dirs;
        const double ch = std::cos(r.heading);
        const double sh = std::sin(r.heading);
        for (int k = 0; k < kRayCount; ++k) {
            dirs[k] = {ch * ray_base_[k].x - sh * ray_base_[k].y,
                       sh * ray_base_[k].x + ch * ray_base_[k].y};
        }
        std::array<double, kRayCount> best;
        best.fill(cfg_.sensor_range);
        std::array<int, kRayCount> hit_type;
        hit_type.fill(-1);

        for (int k = 0; k < kRayCount; ++k) {
            const double t = wall_distance(r.pos, dirs[k]);
            if (t < best[k]) best[k] = t;
        }
        for (std::size_t j = 0; j < robots_.size(); ++j) {
            if (j == i) continue;
            test_disc(r.pos, dirs, robots_[j].pos, cfg_.robot_radius, -1, best,
                      hit_type);
        }
        const double reach = cfg_.sensor_range + cfg_.token_radius;
        scratch_.clear();
        grid_.query(r.pos, reach, scratch_);
        for (const std::size_t id : scratch_) {
            const Token& tok = tokens_[id];
            const Vec2 o = tok.pos - r.pos;
            if (o.norm2() > reach * reach) continue;
            test_disc(r.pos, dirs, tok.pos, cfg_.token_radius, tok.type_id,
                      best, hit_type);
        }

        SensorFrame frame{};
        for (int k = 0; k < kRayCount; ++k) {
            if (best[k] < cfg_.sensor_range) {
                frame[k].proximity = 1.0 - best[k] / cfg_.sensor_range;
                frame[k].is_token = hit_type[k] >= 0;
                frame[k].token_type = hit_type[k];
            }
        }
        return frame;
    }

    std::uint64_t iteration() const { return iteration_; }
    int season() const { return season_; }
    const SeasonSchedule& schedule() const { return schedule_; }
    const SimConfig& config() const { return cfg_; }

    const std::vector<Robot>& robots() const { return robots_; }
    Robot& robot(std::size_t i) { return robots_[i]; }
    const std::vector<Token>& tokens() const { return tokens_; }
    Token& token(std::size_t i) { return tokens_[i]; }

    // After tests move or (de)activate tokens by hand.
    void rebuild_token_grid() {
        grid_.clear();
        for (std::size_t id = 0; id < tokens_.size(); ++id) {
            if (tokens_[id].active()) grid_.insert(id, tokens_[id].pos);
        }
    }

    std::uint64_t collected_positive() const { return collected_p_; }
    std::uint64_t collected_negative() const { return collected_n_; }
    std::uint64_t activations() const { return activations_; }
    const std::vector<EolEvent>& eol_events() const { return eol_events_; }

    // Audit trail for one robot: every energy update while it holds a
    // genome (inert iterations have no energy flow and no row).
    void record_ledger(std::size_t robot_index) {
        ledger_robot_ = static_cast<std::ptrdiff_t>(robot_index);
    }
    const std::vector<std::pair<std::uint64_t, LedgerRow>>& ledger() const {
        return ledger_;
    }

    int alive_count() const {
        int n = 0;
        for (const Robot& r : robots_) n += r.alive() ? 1 : 0;
        return n;
    }

    double mean_alive_energy() const {
        double sum = 0.0;
        int n = 0;
        for (const Robot& r : robots_) {
            if (r.alive()) {
                sum += r.energy;
                ++n;
            }
        }
        return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    static constexpr double kDegToRad = kPi / 180.0;

    Vec2 random_pos(double margin) {
        return {rng_.uniform(margin, arena_.width - margin),
                rng_.uniform(margin, arena_.height - margin)};
    }

    void update_season() {
        const int s = schedule_.season_at(iteration_);
        if (s == season_) return;
        season_ = s;
        for (Token& tok : tokens_)
            tok.value = token_value(tok.type_id, s, cfg_.token_value,
                                    cfg_.negative_value);
    }

    void respawn_tokens() {
        for (std::size_t id = 0; id < tokens_.size(); ++id) {
            Token& tok = tokens_[id];
            if (tok.respawn_remaining == 0) continue;
            if (--tok.respawn_remaining == 0) {
                tok.pos = random_pos(cfg_.token_radius);
                grid_.insert(id, tok.pos);
            }
        }
    }

    void act_phase() {
        for (std::size_t i = 0; i < robots_.size(); ++i) {
            Robot& r = robots_[i];
            gains_[i].clear();
            r.v_trans = 0.0;
            r.v_rot = 0.0;
            if (!r.alive()) continue;
            if (r.evo.lifetime >= cfg_.max_lifetime || r.energy <= 0.0) {
                end_of_life(i, r.energy <= 0.0);
                continue;
            }
            const SensorFrame frame = cast_rays(i);
            for (const RayHit& h : frame) {
                if (h.is_token)
                    r.learner.on_token_detected(h.token_type,
                                                *r.evo.current_genome, rng_);
            }
            const auto inputs = modulate_inputs(frame, r.learner);
            const MotorCommand cmd =
                forward(*r.evo.current_genome, r.context, inputs, topo_);
            r.v_trans = cmd.v_trans_cmd * cfg_.v_trans_max;
            r.v_rot = cmd.v_rot_cmd * cfg_.v_rot_max;
            r.heading = wrap_angle(r.heading + r.v_rot);
            move_robot(i);
            consume_tokens(i);
            r.evo.lifetime += 1;
        }
    }

    // Translation is truncated at the first wall or robot contact.
    void move_robot(std::size_t i) {
        Robot& r = robots_[i];
        if (r.v_trans <= 0.0) return;
        const Vec2 d = unit_from_angle(r.heading) * r.v_trans;
        double alpha = wall_alpha(r.pos, d);
        const double contact = 2.0 * cfg_.robot_radius;
        const double reject = r.v_trans + contact;
        for (std::size_t j = 0; j < robots_.size(); ++j) {
            if (j == i) continue;
            const Vec2 q = robots_[j].pos - r.pos;
            const double q2 = q.norm2();
            if (q2 > reject * reject) continue;
            const double b = -2.0 * q.dot(d);
            const double c = q2 - contact * contact;
            if (c <= 0.0) {  // already touching: only block approach
                if (b < 0.0) alpha = 0.0;
                continue;
            }
            const double a = d.norm2();
            const double disc = b * b - 4.0 * a * c;
            if (disc <= 0.0) continue;
            const double t = (-b - std::sqrt(disc)) / (2.0 * a);
            if (t >= 0.0 && t < alpha) alpha = t;
        }
        if (alpha <= 0.0) return;
        r.pos += d * alpha;
        r.pos.x = clamp(r.pos.x, cfg_.robot_radius,
                        arena_.width - cfg_.robot_radius);
        r.pos.y = clamp(r.pos.y, cfg_.robot_radius,
                        arena_.height - cfg_.robot_radius);
    }

    void consume_tokens(std::size_t i) {
        Robot& r = robots_[i];
        const double reach = cfg_.robot_radius + cfg_.token_radius;
        scratch_.clear();
        grid_.query(r.pos, reach, scratch_);
        if (scratch_.empty()) return;
        std::sort(scratch_.begin(), scratch_.end());
        for (const std::size_t id : scratch_) {
            Token& tok = tokens_[id];
            if (!tok.active()) continue;
            if ((tok.pos - r.pos).norm2() > reach * reach) continue;
            r.learner.on_token_detected(tok.type_id, *r.evo.current_genome,
                                        rng_);
            r.learner.on_token_consumed(tok.type_id, tok.value);
            gains_[i].push_back(tok.value);
            if (tok.value > 0.0) ++collected_p_;
            else ++collected_n_;
            grid_.remove(id, tok.pos);
            tok.respawn_remaining = static_cast<int>(cfg_.token_respawn);
        }
    }

    void end_of_life(std::size_t i, bool starved) {
        Robot& r = robots_[i];
        eol_events_.push_back({iteration_, r.evo.delta_energy, starved});
        r.evo.current_genome.reset();
        // The genome list survives: it is the selection pool at the
        // decision point in the replacement phase.
    }

    void broadcast_phase() {
        for (std::size_t i = 0; i < robots_.size(); ++i) {
            rx_[i] = 0;
            tx_[i].clear();
        }
        if (iteration_ % static_cast<std::uint64_t>(cfg_.broadcast_every) != 0)
            return;
        const double range2 = cfg_.comm_range * cfg_.comm_range;
        for (std::size_t i = 0; i < robots_.size(); ++i) {
            const Robot& s = robots_[i];
            if (!s.alive()) continue;
            receivers_.clear();
            subpop_.clear();
            subpop_.push_back(s.evo.delta_energy);
            for (std::size_t j = 0; j < robots_.size(); ++j) {
                if (j == i) continue;
                const double d2 = (robots_[j].pos - s.pos).norm2();
                if (d2 > range2) continue;
                receivers_.push_back(j);
                if (robots_[j].alive())
                    subpop_.push_back(robots_[j].evo.delta_energy);
            }
            if (receivers_.empty()) continue;
            const double f = relative_fitness(s.evo.delta_energy, subpop_);
            for (const std::size_t j : receivers_) {
                tx_[i].push_back(distance(s.pos, robots_[j].pos));
                rx_[j] += 1;
                inbox_[j].push_back({s.evo.current_genome, f});
            }
        }
    }

    void energy_phase() {
        for (std::size_t i = 0; i < robots_.size(); ++i) {
            Robot& r = robots_[i];
            if (!r.alive()) continue;
            const double e_step = step_cost(r.v_rot, r.v_trans, energy_);
            const double e_com = comm_cost(rx_[i], tx_[i], energy_);
            const EnergyUpdate u =
                update_energy(r.energy, e_step, e_com, gains_[i]);
            r.energy = u.energy;
            r.evo.delta_energy += u.balance;
            if (static_cast<std::ptrdiff_t>(i) == ledger_robot_)
                ledger_.emplace_back(iteration_, u.row);
        }
    }

    void replacement_phase() {
        for (std::size_t j = 0; j < robots_.size(); ++j) {
            for (const ReceivedGenome& rec : inbox_[j])
                robots_[j].evo.genome_list.add_if_unique(rec.genome,
                                                         rec.fitness);
            inbox_[j].clear();
        }
        for (std::size_t j = 0; j < robots_.size(); ++j) {
            Robot& r = robots_[j];
            if (r.alive() || r.evo.genome_list.empty()) continue;
            fitness_.clear();
            for (const ReceivedGenome& e : r.evo.genome_list.entries())
                fitness_.push_back(e.fitness);
            const std::size_t k = roulette_select(fitness_, rng_);
            const Genome& parent = *r.evo.genome_list.entries()[k].genome;
            auto child = std::make_shared<const Genome>(
                apply_variation(parent, cfg_.mutation_sigma, ranges_, rng_,
                                next_genome_id_++));
            activate(j, std::move(child));
        }
    }

    void activate(std::size_t i, GenomePtr g) {
        Robot& r = robots_[i];
        r.evo.current_genome = std::move(g);
        r.evo.lifetime = 0;
        r.evo.delta_energy = 0.0;
        r.evo.genome_list.clear();
        r.energy = cfg_.start_energy;
        r.context.reset();
        r.learner.reset(cfg_.variant, *r.evo.current_genome, cfg_.lr_fixed,
                        cfg_.value_scope);
        ++activations_;
    }

    double wall_distance(Vec2 p, Vec2 u) const {
        double t = std::numeric_limits<double>::infinity();
        if (u.x > 0.0) t = std::min(t, (arena_.width - p.x) / u.x);
        else if (u.x < 0.0) t = std::min(t, -p.x / u.x);
        if (u.y > 0.0) t = std::min(t, (arena_.height - p.y) / u.y);
        else if (u.y < 0.0) t = std::min(t, -p.y / u.y);
        return t;
    }

    // Largest fraction of displacement d keeping the body disc inside.
    double wall_alpha(Vec2 p, Vec2 d) const {
        double a = 1.0;
        const double lo = cfg_.robot_radius;
        if (d.x > 0.0) a = std::min(a, (arena_.width - lo - p.x) / d.x);
        else if (d.x < 0.0) a = std::min(a, (lo - p.x) / d.x);
        if (d.y > 0.0) a = std::min(a, (arena_.height - lo - p.y) / d.y);
        else if (d.y < 0.0) a = std::min(a, (lo - p.y) / d.y);
        return a < 0.0 ? 0.0 : a;
    }

    static void test_disc(Vec2 origin, const std::array<Vec2, kRayCount>& dirs,
                          Vec2 center, double radius, int token_type,
                          std::array<double, kRayCount>& best,
                          std::array<int, kRayCount>& hit_type) {
        const Vec2 o = center - origin;
        const double d2 = o.norm2();
        const double r2 = radius * radius;
        for (int k = 0; k < kRayCount; ++k) {
            const double t = o.dot(dirs[k]);
            if (t <= 0.0 || t >= best[k]) continue;
            if (d2 - t * t > r2) continue;
            best[k] = t;
            hit_type[k] = token_type;
        }
    }

    SimConfig cfg_;
    Rng rng_;
    Arena arena_;
    SeasonSchedule schedule_;
    EnergyParams energy_;
    LearnRanges ranges_;
    RnnTopology topo_;
    std::array<Vec2, kRayCount> ray_base_{};

    std::uint64_t iteration_ = 0;
    int season_ = 0;
    std::uint64_t next_genome_id_ = 0;
    std::uint64_t activations_ = 0;
    std::uint64_t collected_p_ = 0;
    std::uint64_t collected_n_ = 0;

    std::vector<Robot> robots_;
    std::vector<Token> tokens_;
    UniformGrid grid_;
    std::vector<EolEvent> eol_events_;
    std::ptrdiff_t ledger_robot_ = -1;
    std::vector<std::pair<std::uint64_t, LedgerRow>> ledger_;

    // per-iteration scratch, reused across steps
    std::vector<std::uint32_t> rx_;
    std::vector<std::vector<double>> tx_;
    std::vector<std::vector<ReceivedGenome>> inbox_;
    std::vector<std::vector<double>> gains_;
    std::vector<std::size_t> receivers_;
    std::vector<double> subpop_;
    std::vector<double> fitness_;
    mutable std::vector<std::size_t> scratch_;
};

}  // namespace medea
