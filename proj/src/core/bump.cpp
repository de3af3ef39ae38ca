#include "core/bump.hpp"

#include <cmath>

namespace dwl::multiplier {

namespace {

double mother(double r) {
    if (r <= 0.5 || r >= 2.0) return 0.0;
    return std::exp(-1.0 / (r - 0.5) - 1.0 / (2.0 - r));
}

} // namespace

double Bump::rho(double r) const {
    r = std::abs(r);
    if (r <= 0.5 || r >= 2.0) return 0.0;
    // At most two dyadic translates of the support contain r.
    double num = mother(r);
    double den = num + mother(r / 2.0) + mother(r * 2.0);
    return num / den;
}

double Bump::rho1(double r) const {
    r = std::abs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 1.0 - rho(r / 2.0); // only the lambda = 2 annulus overlaps (1,2)
}

double Bump::smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

const Bump& bump() {
    static Bump b;
    return b;
}

} // namespace dwl::multiplier
