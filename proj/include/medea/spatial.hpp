#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "medea/geometry.hpp"

namespace medea {

// Uniform grid over the arena mapping cells to item indices. Items are
// points (token centres); queries gather candidates within a radius, the
// caller does exact tests.
class UniformGrid {
public:
    UniformGrid() = default;

    UniformGrid(double width, double height, double cell_size)
        : cell_(cell_size),
          cols_(static_cast<int>(std::ceil(width / cell_size))),
          rows_(static_cast<int>(std::ceil(height / cell_size))),
          cells_(static_cast<std::size_t>(cols_) * rows_) {}

    void insert(std::size_t id, Vec2 p) { cells_[cell_index(p)].push_back(id); }

    void remove(std::size_t id, Vec2 p) {
        auto& bucket = cells_[cell_index(p)];
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            if (bucket[i] == id) {
                bucket[i] = bucket.back();
                bucket.pop_back();
                return;
            }
        }
    }

    // Appends ids of every item in cells overlapping the disc (p, radius).
    void query(Vec2 p, double radius, std::vector<std::size_t>& out) const {
        const int c0 = clamp_col(static_cast<int>((p.x - radius) / cell_));
        const int c1 = clamp_col(static_cast<int>((p.x + radius) / cell_));
        const int r0 = clamp_row(static_cast<int>((p.y - radius) / cell_));
        const int r1 = clamp_row(static_cast<int>((p.y + radius) / cell_));
        for (int r = r0; r <= r1; ++r) {
            for (int c = c0; c <= c1; ++c) {
                const auto& bucket = cells_[static_cast<std::size_t>(r) * cols_ + c];
                out.insert(out.end(), bucket.begin(), bucket.end());
            }
        }
    }

    void clear() {
        for (auto& bucket : cells_) bucket.clear();
    }

private:
    std::size_t cell_index(Vec2 p) const {
        const int c = clamp_col(static_cast<int>(p.x / cell_));
        const int r = clamp_row(static_cast<int>(p.y / cell_));
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int clamp_col(int c) const { return c < 0 ? 0 : (c >= cols_ ? cols_ - 1 : c); }
    int clamp_row(int r) const { return r < 0 ? 0 : (r >= rows_ ? rows_ - 1 : r); }

    double cell_ = 1.0;
    int cols_ = 1;
    int rows_ = 1;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace medea
