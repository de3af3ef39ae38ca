#include "core/spacetime.hpp"

#include <cmath>
#include <stdexcept>

namespace dwl::grid {

void SpacetimeField::check_consistent() const {
    if (frames.empty()) throw std::invalid_argument("SpacetimeField: no frames");
    for (const auto& f : frames)
        if (!f.same_layout(frames.front()))
            throw std::invalid_argument("SpacetimeField: frames on mismatched grids");
}

double mixed_norm(const SpacetimeField& u, double q, double r) {
    if (q < 1.0 || r < 1.0)
        throw std::invalid_argument("mixed_norm: exponents must be >= 1");
    if (u.sample_count() < 2)
        throw std::invalid_argument("mixed_norm: needs at least two frames");
    const int K = u.sample_count();
    if (std::isinf(q)) {
        double best = 0.0;
        for (const auto& f : u.frames) best = std::max(best, lebesgue_norm(f, r));
        return best;
    }
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
        double w = (k == 0 || k == K - 1) ? 0.5 : 1.0;
        acc += w * std::pow(lebesgue_norm(u.frames[k], r), q) * u.time_step;
    }
    return std::pow(acc, 1.0 / q);
}

} // namespace dwl::grid
