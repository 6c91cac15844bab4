#include <doctest.h>

#include "helpers.hpp"
#include "twistor/metric.hpp"

using namespace tw;

TEST_SUITE("proj") {
    TEST_CASE("normalize fixes scale and phase") {
        ProjVec a = normalize(point(2, 0, 0));
        CHECK(std::abs(a.v(0) - 1.0) < 1e-15);
        ProjVec b = normalize(point(0, cplx(0, 1), 0));
        CHECK(std::abs(b.v(1) - 1.0) < 1e-15);
        CHECK(std::abs(b.v(0)) == 0.0);
        ProjVec c = normalize(point(1, 1, cplx(1, 1e-15)));
        for (int k = 0; k < 3; ++k) CHECK(std::abs(c.v(k) - 1 / std::sqrt(3.0)) < 1e-12);
        CHECK(c.flavor == Flavor::Point);
    }

    TEST_CASE("normalize is idempotent") {
        std::mt19937_64 rng(1);
        for (int k = 0; k < 100; ++k) {
            ProjVec a = normalize(random_projvec(rng, Flavor::Line));
            CHECK((normalize(a).v - a.v).norm() < 1e-15);
        }
    }

    TEST_CASE("zero vectors are rejected") { CHECK_THROWS_AS(normalize(point(0, 0, 0)), ZeroVector); }

    TEST_CASE("proj_eq") {
        CHECK(proj_eq(point(1, 0, 0), point(cplx(0, 5), 0, 0)));
        CHECK_FALSE(proj_eq(point(1, 0, 0), point(0, 1, 0)));
        CHECK(proj_eq(point(1, 1, 0), point(1, 1, 1e-12), 1e-9));
        CHECK_THROWS_AS(proj_eq(point(1, 0, 0), line(1, 0, 0)), FlavorMismatch);
    }

    TEST_CASE("proj_dist handles tied largest entries") {
        // equal moduli in two slots: canonical phases differ but the classes agree
        ProjVec u = point(1, cplx(0, 1), 0);
        ProjVec v = point(cplx(0, 1), -1.0, 0);
        CHECK(proj_dist(u, v) < 1e-15);
    }

    TEST_CASE("cross product") {
        ProjVec l = cross(point(1, 0, 0), point(0, 1, 0));
        CHECK(l.flavor == Flavor::Line);
        CHECK(proj_eq(l, line(0, 0, 1)));
        ProjVec p = cross(line(0, 0, 1), line(1, 1, 1));
        CHECK(p.flavor == Flavor::Point);
        CHECK(proj_eq(p, point(-1, 1, 0)));
        CHECK_THROWS_AS(cross(point(1, 0, 0), point(2, 0, 0)), DegenerateCross);
        CHECK_THROWS_AS(cross(point(1, 0, 0), line(0, 1, 0)), FlavorMismatch);
        std::mt19937_64 rng(2);
        for (int k = 0; k < 100; ++k) {
            ProjVec a = th::rpt(rng), b = th::rpt(rng);
            ProjVec c = cross(a, b);
            CHECK(incidence(a, c) < 1e-12);
            CHECK(incidence(b, c) < 1e-12);
        }
    }

    TEST_CASE("pair") {
        CHECK(std::abs(pair(point(1, 0, 0), line(0, 0, 1))) == 0.0);
        CHECK(std::abs(pair(point(1, 1, 0), line(1, -1, 0))) == 0.0);
        CHECK(pair(point(1, 0, 0), line(1, 0, 0)) == cplx(1.0));
    }

    TEST_CASE("star conjugates and flips flavor") {
        ProjVec s = star(point(1, cplx(0, 1), 0));
        CHECK(s.flavor == Flavor::Line);
        CHECK(proj_eq(s, line(1, cplx(0, -1), 0)));
        CHECK(proj_eq(star(point(1, 0, 0)), line(1, 0, 0)));
        std::mt19937_64 rng(3);
        for (int k = 0; k < 20; ++k) {
            ProjVec v = th::rpt(rng);
            CHECK(proj_eq(star(star(v)), v));
        }
    }

    TEST_CASE("random_projvec determinism and distribution") {
        ProjVec a = random_projvec(99, Flavor::Point), b = random_projvec(99, Flavor::Point);
        CHECK(a.v == b.v);
        ProjVec c = random_projvec(99, Flavor::Line);
        CHECK(c.v == a.v);
        CHECK(c.flavor == Flavor::Line);
        std::mt19937_64 rng(4);
        std::array<double, 3> mean{0, 0, 0};
        const int N = 10000;
        for (int k = 0; k < N; ++k) {
            auto mu = moment_map(random_projvec(rng, Flavor::Point));
            for (int i = 0; i < 3; ++i) mean[i] += mu[i] / N;
        }
        for (double m : mean) CHECK(std::abs(m - 1.0 / 3) < 0.02);
    }
}
