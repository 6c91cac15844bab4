#include "twistor/proj.hpp"

#include <cmath>

namespace tw {

ProjVec point(cplx a, cplx b, cplx c) { return {Vec3(a, b, c), Flavor::Point}; }
ProjVec line(cplx a, cplx b, cplx c) { return {Vec3(a, b, c), Flavor::Line}; }
ProjVec point(const Vec3& v) { return {v, Flavor::Point}; }
ProjVec line(const Vec3& v) { return {v, Flavor::Line}; }

ProjVec normalize(const ProjVec& v) {
    double mx = v.v.cwiseAbs().maxCoeff();
    if (!(mx >= kZeroTol)) throw ZeroVector();
    Vec3 w = v.v / mx;
    int k = 0;
    double big = 0;
    for (int i = 0; i < 3; ++i) big = std::max(big, std::abs(w(i)));
    for (int i = 0; i < 3; ++i) {
        if (std::abs(w(i)) >= big * (1 - 1e-12)) {
            k = i;
            break;
        }
    }
    w *= std::conj(w(k)) / std::abs(w(k));
    w(k) = std::abs(w(k));
    w /= w.norm();
    return {w, v.flavor};
}

double proj_dist(const ProjVec& u, const ProjVec& v) {
    Vec3 a = u.v / u.v.norm();
    Vec3 b = v.v / v.v.norm();
    cplx ip = b.dot(a);  // conj(b)·a
    cplx ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1);
    return (a - ph * b).norm();
}

bool proj_eq(const ProjVec& u, const ProjVec& v, double tol) {
    if (u.flavor != v.flavor) throw FlavorMismatch();
    return proj_dist(u, v) < tol;
}

ProjVec cross(const ProjVec& u, const ProjVec& v) {
    if (u.flavor != v.flavor) throw FlavorMismatch();
    Vec3 a = u.v / u.v.norm();
    Vec3 b = v.v / v.v.norm();
    Vec3 c(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
    if (c.norm() < kZeroTol) throw DegenerateCross();
    return normalize({c, flip(u.flavor)});
}

cplx pair(const ProjVec& p, const ProjVec& l) { return p.v.transpose() * l.v; }

double incidence(const ProjVec& p, const ProjVec& l) {
    return std::abs(pair(p, l)) / (p.v.norm() * l.v.norm());
}

ProjVec star(const ProjVec& v) { return {v.v.conjugate(), flip(v.flavor)}; }

Vec3 gaussian_vec3(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        double re = n(rng);
        double im = n(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

ProjVec random_projvec(std::mt19937_64& rng, Flavor flavor) {
    return normalize({gaussian_vec3(rng), flavor});
}

ProjVec random_projvec(std::uint64_t seed, Flavor flavor) {
    std::mt19937_64 rng(seed);
    return random_projvec(rng, flavor);
}

}  // namespace tw
