#pragma once
#include <cmath>
#include <stdexcept>
#include <string>

namespace dwl {

// Propagation sign theta in {+,-}.
enum class Sign : int { plus = +1, minus = -1 };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline std::string sign_name(Sign s) { return s == Sign::plus ? "+" : "-"; }

// Dispersion relation h(xi) = |xi| (wave) or <xi>_m = sqrt(m^2+|xi|^2)
// (Klein-Gordon).
struct DispersionLaw {
    enum class Kind { wave, klein_gordon };
    Kind kind = Kind::wave;
    double mass = 0.0;

    static DispersionLaw wave() { return {Kind::wave, 0.0}; }
    static DispersionLaw klein_gordon(double m) {
        if (m <= 0.0) throw std::invalid_argument("klein_gordon law requires m > 0");
        return {Kind::klein_gordon, m};
    }

    double symbol(double abs_xi) const {
        return kind == Kind::wave ? abs_xi : std::sqrt(mass * mass + abs_xi * abs_xi);
    }
    std::string name() const {
        return kind == Kind::wave ? "wave" : "klein_gordon(m=" + std::to_string(mass) + ")";
    }
};

} // namespace dwl
