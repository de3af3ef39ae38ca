#pragma once
#include <string>

namespace dwl::multiplier {

// Smooth even profile rho supported in {1/2 < r < 2} with the dyadic
// partition property sum_{lambda in 2^Z} rho(r/lambda) = 1 for r > 0, plus
// rho1 = sum_{lambda <= 1} rho(r/lambda) (equal to 1 on [0,1], 0 on [2,inf)).
//
// Construction: the exp(-1/x) mother bump on (1/2,2) divided by its own
// dyadic sum, which makes the partition identity exact up to rounding.
class Bump {
public:
    double rho(double r) const;
    double rho1(double r) const;

    // C-infinity step: 0 for u <= 0, 1 for u >= 1, built from the same
    // exp(-1/x) cutoff. Shared by cube/cap partitions and temporal tapers.
    static double smoothstep(double u);

    // Identifier recorded in probe reports; constants (never exponents) of
    // probe ratios depend on the profile choice.
    static std::string id() { return "exp-recip-dyadic-v1"; }
};

const Bump& bump();

} // namespace dwl::multiplier
