#include "doctest.h"

TEST_CASE("placeholder_io") { CHECK(true); }
