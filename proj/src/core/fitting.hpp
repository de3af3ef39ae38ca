#pragma once
#include <vector>

namespace dwl::normbench {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0; // in log space
    double residual = 0.0;  // max |log y - log model|
};

// Ordinary least squares on (log x, log y). Requires >= 3 samples with
// positive coordinates.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples);

} // namespace dwl::normbench
