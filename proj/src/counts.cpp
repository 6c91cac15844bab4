#include "twistor/counts.hpp"

#include <cstdlib>

#include "twistor/types.hpp"

namespace tw {

namespace {

void cap(std::int64_t x) {
    if (x > kMaxBidegree || x < -kMaxBidegree) throw Overflow("bidegree exceeds 1e6");
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw Overflow("integer overflow");
    return r;
}

std::int64_t add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw Overflow("integer overflow");
    return r;
}

std::int64_t binom2(std::int64_t n) { return n < 2 ? 0 : mul(n, n - 1) / 2; }

}  // namespace

std::int64_t h0_product(std::int64_t a, std::int64_t b) {
    cap(a);
    cap(b);
    if (a < 0 || b < 0) return 0;
    return mul(binom2(a + 2), binom2(b + 2));
}

std::int64_t h0_flag(std::int64_t a, std::int64_t b) {
    cap(a);
    cap(b);
    if (a < 0 || b < 0) return 0;
    return add(mul(binom2(a + 2), binom2(b + 2)), -mul(binom2(a + 1), binom2(b + 1)));
}

std::int64_t triple_product(Bidegree x, Bidegree y, Bidegree z) {
    for (auto v : {x.a, x.b, y.a, y.b, z.a, z.b}) cap(v);
    // every monomial counts 1 except (1,0)^3 and (0,1)^3
    std::int64_t all = mul(mul(x.a + x.b, y.a + y.b), z.a + z.b);
    return add(add(all, -mul(mul(x.a, y.a), z.a)), -mul(mul(x.b, y.b), z.b));
}

std::int64_t c1_squared(std::int64_t a, std::int64_t b) {
    cap(a);
    cap(b);
    std::int64_t r = add(mul(3, mul(mul(a, a), b)), mul(3, mul(a, mul(b, b))));
    r = add(r, -mul(4, mul(a, a)));
    r = add(r, -mul(4, mul(b, b)));
    r = add(r, -mul(16, mul(a, b)));
    return add(r, add(mul(12, a), mul(12, b)));
}

std::int64_t blowup_count_1d(std::int64_t d) {
    cap(d);
    if (d < 1) throw NonPositiveBidegree("d must be >= 1");
    return add(add(mul(d, d), d), 1);
}

std::int64_t max_11_curves_in_intersection(std::int64_t a, std::int64_t b) {
    cap(a);
    cap(b);
    if (a < 0 || b < 0) throw NonPositiveBidegree("bidegree must be nonnegative");
    return add(add(mul(a, a), mul(a, b)), mul(b, b));
}

std::int64_t max_twistor_lines(std::int64_t a, std::int64_t b) {
    cap(a);
    cap(b);
    if (a <= 0 || b <= 0) throw NonPositiveBidegree("bidegree must be positive");
    return max_11_curves_in_intersection(a, b) - 1;
}

}  // namespace tw
