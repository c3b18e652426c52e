#include <doctest.h>

#include "size_power.hpp"

TEST_SUITE("sizepower") {
    TEST_CASE("empirical size and power at 5%") {
        for (const auto& r : support::size_power_suite()) {
            INFO(r.test, " under ", r.dgp, " T=", r.T, ": ", r.rate, " not in [", r.lo, ", ", r.hi, "]");
            CHECK(r.ok());
        }
    }
}
