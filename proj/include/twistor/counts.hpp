#pragma once

#include <cstdint>

namespace tw {

struct Bidegree {
    std::int64_t a = 0;
    std::int64_t b = 0;
};

inline constexpr std::int64_t kMaxBidegree = 1'000'000;

std::int64_t h0_product(std::int64_t a, std::int64_t b);
std::int64_t h0_flag(std::int64_t a, std::int64_t b);
// O(x)·O(y)·O(z) on F, extended trilinearly from the generators (1,0), (0,1).
std::int64_t triple_product(Bidegree x, Bidegree y, Bidegree z);
std::int64_t c1_squared(std::int64_t a, std::int64_t b);
std::int64_t blowup_count_1d(std::int64_t d);
std::int64_t max_twistor_lines(std::int64_t a, std::int64_t b);
std::int64_t max_11_curves_in_intersection(std::int64_t a, std::int64_t b);

}  // namespace tw
