#pragma once
#include "core/grid.hpp"

namespace dwl::grid {

// Uniformly time-sampled sequence of fields on one grid over [0, T] with
// T = (frames-1)*dt.
struct SpacetimeField {
    double time_step = 0.0;
    std::vector<Field> frames;

    SpacetimeField() = default;
    SpacetimeField(double dt, std::vector<Field> fr)
        : time_step(dt), frames(std::move(fr)) {}

    int sample_count() const { return static_cast<int>(frames.size()); }
    double window() const { return time_step * (sample_count() - 1); }
    double time_of(int k) const { return time_step * k; }
    const GridSpec& gridspec() const { return frames.front().grid; }

    void check_consistent() const;
};

// Trapezoid-in-time composition of per-frame Lebesgue norms:
// ( sum_t w_t ||u(t)||_{L^r}^q dt )^(1/q); q = inf takes the frame max.
double mixed_norm(const SpacetimeField& u, double q, double r);

} // namespace dwl::grid
