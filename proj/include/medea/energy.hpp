#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "medea/geometry.hpp"

namespace medea {

// Energy model constants. The communication constants follow a measured
// radio model; the negative token value is fixed for every environment.
struct EnergyParams {
    double living_cost = 0.5;
    double v_trans_max = 2.0;
    double v_rot_max = 0.1745;
    double a_rx = 0.0305;
    double a_tx = 0.01379;
    double a_tx_amp = 0.000614;
    double token_negative = -400.0;
    double start_energy = 500.0;
};

// Motion cost for one step. Turning direction does not matter, so the
// rotational term uses |v_rot|.
inline double step_cost(double v_rot, double v_trans, const EnergyParams& p) {
    return p.living_cost +
           (std::abs(v_rot) / p.v_rot_max + v_trans / p.v_trans_max) / 4.0;
}

// Communication cost for one step: per-genome receive cost plus a
// distance-dependent cost for each transmission.
inline double comm_cost(std::uint32_t received,
                        std::span<const double> transmit_distances,
                        const EnergyParams& p) {
    double e = static_cast<double>(received) * p.a_rx;
    for (double d : transmit_distances) {
        e += p.a_tx + p.a_tx_amp * d * d;
    }
    return e;
}

// One audited energy update. energy_after is the pre-clamp balance; the
// clamped value is what the robot carries forward.
struct LedgerRow {
    double energy_before = 0.0;
    double e_step = 0.0;
    double e_com = 0.0;
    double token_gain = 0.0;
    double energy_after = 0.0;  // pre-clamp
};

struct EnergyUpdate {
    double energy = 0.0;      // clamped at 0
    double balance = 0.0;     // pre-clamp delta: token_gain - e_step - e_com
    LedgerRow row;
};

inline EnergyUpdate update_energy(double energy, double e_step, double e_com,
                                  std::span<const double> consumed_values) {
    double gain = 0.0;
    for (double v : consumed_values) gain += v;
    const double raw = energy - e_step - e_com + gain;
    EnergyUpdate u;
    u.energy = raw < 0.0 ? 0.0 : raw;
    u.balance = gain - e_step - e_com;
    u.row = {energy, e_step, e_com, gain, raw};
    return u;
}

}  // namespace medea
