#include "core/nonlinear.hpp"
#include <doctest.h>
TEST_CASE("placeholder nonlinear") { CHECK(true); }
