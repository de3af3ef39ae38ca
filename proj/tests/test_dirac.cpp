#include "core/dirac.hpp"
#include <doctest.h>
TEST_CASE("placeholder dirac") { CHECK(true); }
