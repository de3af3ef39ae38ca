#include "core/vnorm.hpp"

#include <cmath>
#include <stdexcept>

namespace dwl::normbench {

namespace {

// DP over pairwise squared increments. dist2(i,j) for i < j, mag(k) = ||v_k||.
template <class Dist2, class Mag>
V2Result v2_generic(int K, Dist2&& dist2, Mag&& mag) {
    if (K < 1) throw std::invalid_argument("v2_norm: needs at least one sample");
    V2Result out;
    for (int k = 0; k < K; ++k) out.sup_part = std::max(out.sup_part, mag(k));
    std::vector<double> best(K, 0.0);
    double top = 0.0;
    for (int j = 1; j < K; ++j) {
        for (int i = 0; i < j; ++i)
            best[j] = std::max(best[j], best[i] + dist2(i, j));
        top = std::max(top, best[j]);
    }
    out.variation_part = std::sqrt(top);
    return out;
}

} // namespace

V2Result v2_norm(const std::vector<double>& p) {
    return v2_generic(
        static_cast<int>(p.size()),
        [&](int i, int j) {
            double d = p[j] - p[i];
            return d * d;
        },
        [&](int k) { return std::abs(p[k]); });
}

V2Result v2_norm(const std::vector<grid::Field>& path) {
    const int K = static_cast<int>(path.size());
    for (const auto& f : path)
        if (!f.same_layout(path.front()))
            throw std::invalid_argument("v2_norm: mismatched frames");
    // cache pairwise distances; fields are the expensive part
    std::vector<double> d2(static_cast<std::size_t>(K) * K, 0.0);
    const double cv = path.front().space == grid::Space::physical
                          ? path.front().grid.cell_volume()
                          : 1.0 / std::pow(2.0 * path.front().grid.half_period, 3);
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j) {
            double acc = 0.0;
            const auto& a = path[i].values;
            const auto& b = path[j].values;
            for (std::size_t t = 0; t < a.size(); ++t) acc += std::norm(a[t] - b[t]);
            d2[static_cast<std::size_t>(i) * K + j] = acc * cv;
        }
    return v2_generic(
        K, [&](int i, int j) { return d2[static_cast<std::size_t>(i) * K + j]; },
        [&](int k) { return grid::l2_norm(path[k]); });
}

V2Result v2_norm_bruteforce(const std::vector<double>& p) {
    const int K = static_cast<int>(p.size());
    if (K < 1 || K > 20)
        throw std::invalid_argument("v2_norm_bruteforce: K must be in [1,20]");
    V2Result out;
    for (double v : p) out.sup_part = std::max(out.sup_part, std::abs(v));
    double top = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
        double acc = 0.0, prev = 0.0;
        bool have_prev = false;
        for (int k = 0; k < K; ++k) {
            if (!(mask & (1u << k))) continue;
            if (have_prev) acc += (p[k] - prev) * (p[k] - prev);
            prev = p[k];
            have_prev = true;
        }
        top = std::max(top, acc);
    }
    out.variation_part = std::sqrt(top);
    return out;
}

} // namespace dwl::normbench
