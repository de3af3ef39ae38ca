#pragma once
#include "core/grid.hpp"
#include "core/spacetime.hpp"

#include <vector>

namespace dwl::normbench {

// Discrete 2-variation: the supremum over all increasing subsequences of the
// sampled times of ( sum ||v(t_k) - v(t_{k-1})||^2 )^(1/2), by dynamic
// programming over the O(K^2) pairs, plus the L^inf-in-time part.
struct V2Result {
    double sup_part = 0.0;
    double variation_part = 0.0;
    double value() const { return sup_part + variation_part; }
};

V2Result v2_norm(const std::vector<double>& scalar_path);
V2Result v2_norm(const std::vector<grid::Field>& path);

// Exhaustive reference over all 2^K - 1 nonempty subsequences (test oracle;
// K <= 20 enforced).
V2Result v2_norm_bruteforce(const std::vector<double>& scalar_path);

} // namespace dwl::normbench
