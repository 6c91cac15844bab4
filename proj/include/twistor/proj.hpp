#pragma once

#include <cstdint>
#include <random>

#include "twistor/types.hpp"

namespace tw {

enum class Flavor { Point, Line };

inline Flavor flip(Flavor f) { return f == Flavor::Point ? Flavor::Line : Flavor::Point; }

// A nonzero vector of C^3 up to scale. Points act as rows, lines as columns.
struct ProjVec {
    Vec3 v = Vec3::Zero();
    Flavor flavor = Flavor::Point;
};

ProjVec point(cplx a, cplx b, cplx c);
ProjVec line(cplx a, cplx b, cplx c);
ProjVec point(const Vec3& v);
ProjVec line(const Vec3& v);

// Unit norm with the largest-modulus entry real positive (lowest index on ties).
ProjVec normalize(const ProjVec& v);

// Distance between the classes of u and v: min over phases of |u/|u| - e^{it} v/|v||.
double proj_dist(const ProjVec& u, const ProjVec& v);
bool proj_eq(const ProjVec& u, const ProjVec& v, double tol = kProjTol);

ProjVec cross(const ProjVec& u, const ProjVec& v);
cplx pair(const ProjVec& p, const ProjVec& l);
// |pl| relative to |p||l|.
double incidence(const ProjVec& p, const ProjVec& l);
ProjVec star(const ProjVec& v);

ProjVec random_projvec(std::uint64_t seed, Flavor flavor);
ProjVec random_projvec(std::mt19937_64& rng, Flavor flavor);
Vec3 gaussian_vec3(std::mt19937_64& rng);

}  // namespace tw
