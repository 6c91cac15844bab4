#include <doctest.h>

#include <stdexcept>

#include "twistor/counts.hpp"
#include "twistor/types.hpp"

using namespace tw;

TEST_SUITE("counts") {
    TEST_CASE("sections") {
        CHECK(h0_product(0, 0) == 1);
        CHECK(h0_product(1, 1) == 9);
        CHECK(h0_product(-1, 5) == 0);
        CHECK(h0_flag(0, 0) == 1);
        CHECK(h0_flag(1, 1) == 8);
        CHECK(h0_flag(1, 2) == 15);
        CHECK(h0_flag(-1, 2) == 0);
        // dimension of the irreducible representation with highest weight (a,b)
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) CHECK(h0_flag(a, b) == (a + 1) * (b + 1) * (a + b + 2) / 2);
    }

    TEST_CASE("intersection numbers") {
        CHECK(triple_product({1, 0}, {1, 0}, {0, 1}) == 1);
        CHECK(triple_product({1, 0}, {1, 0}, {1, 0}) == 0);
        CHECK(triple_product({1, 1}, {1, 1}, {1, 0}) == 3);
        CHECK(triple_product({1, 1}, {1, 1}, {1, 1}) == 6);
        CHECK(c1_squared(1, 1) == 6);
        CHECK(c1_squared(1, 2) == 2);
        CHECK(c1_squared(0, 1) == 8);
        // symmetry
        CHECK(triple_product({2, 3}, {1, 4}, {5, 1}) == triple_product({5, 1}, {2, 3}, {1, 4}));
    }

    TEST_CASE("blowups and line bounds") {
        CHECK(blowup_count_1d(1) == 3);
        CHECK(blowup_count_1d(2) == 7);
        CHECK(blowup_count_1d(3) == 13);
        CHECK_THROWS(blowup_count_1d(0));
        CHECK(max_twistor_lines(1, 1) == 2);
        CHECK(max_twistor_lines(2, 1) == 6);
        CHECK(max_11_curves_in_intersection(1, 1) == 3);
        CHECK_THROWS(h0_flag(kMaxBidegree + 1, 1));
    }
}
