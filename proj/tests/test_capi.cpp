#include <dwl.h>
#include <doctest.h>
TEST_CASE("placeholder capi") { CHECK(dwl_version() != nullptr); }
