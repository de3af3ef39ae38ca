#include "core/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace dwl::normbench {

FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3)
        throw std::invalid_argument("fit_exponent: needs at least 3 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : samples) {
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("fit_exponent: samples must be positive");
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = static_cast<double>(samples.size());
    double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("fit_exponent: degenerate abscissae");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [x, y] : samples) {
        double model = fit.slope * std::log(x) + fit.intercept;
        fit.residual = std::max(fit.residual, std::abs(std::log(y) - model));
    }
    return fit;
}

} // namespace dwl::normbench
