#include "core/propagator.hpp"
#include <doctest.h>
TEST_CASE("placeholder propagator") { CHECK(true); }
