#pragma once

#include <cmath>
#include <random>

#include "twistor/twistor.hpp"

namespace th {

using tw::cplx;
using tw::Mat3;
using tw::Vec3;

inline Mat3 tri(cplx l, cplx a = 0, cplx b = 0, cplx c = 0) {
    Mat3 A;
    A << 0, a, b, 0, 1, c, 0, 0, l;
    return A;
}

inline tw::ProjVec rpt(std::mt19937_64& rng) { return tw::normalize(tw::point(tw::gaussian_vec3(rng))); }
inline tw::ProjVec rln(std::mt19937_64& rng) { return tw::normalize(tw::line(tw::gaussian_vec3(rng))); }

inline Mat3 rmat(std::mt19937_64& rng) {
    Mat3 A;
    for (int k = 0; k < 3; ++k) A.col(k) = tw::gaussian_vec3(rng);
    return A;
}

inline Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

}  // namespace th
