#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "twistor/sampling.hpp"

using namespace tw;

TEST_SUITE("curves") {
    TEST_CASE("smooth and reducible curves") {
        CHECK(curve(point(1, 0, 0), line(1, 0, 0)).kind == Curve11::Smooth);
        CHECK(curve(point(1, 0, 0), line(0, 0, 1)).kind == Curve11::Reducible);
        CHECK(curve(point(cplx(0, 1), 0, 0), line(1, 1, 0)).kind == Curve11::Smooth);
        CHECK_THROWS_AS(curve(line(1, 0, 0), line(1, 0, 0)), FlavorMismatch);
    }

    TEST_CASE("param samples lie on the curve") {
        Curve11 F = curve(point(1, 0, 0), line(1, 0, 0));
        std::mt19937_64 rng(10);
        for (int k = 0; k < 50; ++k) {
            FlagPoint x = param(F, random_cplx(rng, 5));
            CHECK(std::abs(x.p.v.dot(Vec3(1, 0, 0))) < 1e-12);  // p q* = 0
            CHECK(incidence(point(1, 0, 0), x.l) < 1e-12);
            CHECK(contains(F, x));
        }
        CHECK(contains(F, param_at_infinity(F)));
        CHECK_FALSE(contains(F, make_flag(point(1, 0, 0), line(0, 1, 0))));
        Curve11 L = curve(th::rpt(rng), th::rln(rng));
        std::vector<ProjVec> ps;
        for (int k = 0; k < 1000; ++k) ps.push_back(param(L, cplx(k * 0.01 - 5, 0.37 * k)).p);
        int dup = 0;
        for (size_t a = 0; a < ps.size(); ++a)
            for (size_t b = a + 1; b < ps.size(); ++b) dup += proj_dist(ps[a], ps[b]) < 1e-9;
        CHECK(dup == 0);
    }

    TEST_CASE("worked intersections") {
        Curve11 c1 = curve(point(cplx(0, 1), 0, 0), line(1, 1, 0));
        Curve11 c2 = curve(point(1, 1, 0), line(cplx(0, 1), 0, 0));
        CHECK(intersect(c1, c2).kind == Intersection::Empty);

        std::mt19937_64 rng(11);
        ProjVec a = th::rpt(rng), b = th::rpt(rng);
        CHECK(intersect(twistor_fiber(a), twistor_fiber(b)).kind == Intersection::Empty);

        Curve11 d1 = curve(point(1, 0, 0), line(1, 1, 1));
        Curve11 d2 = curve(point(0, 1, 0), line(1, 1, 1));
        Intersection I = intersect(d1, d2);
        REQUIRE(I.kind == Intersection::OnePoint);
        CHECK(proj_eq(I.points[0].p, point(-1, 1, 0)));
        CHECK(proj_eq(I.points[0].l, line(0, 0, 1)));

        CHECK_THROWS_AS(intersect(d1, d1), IdenticalCurves);
    }

    TEST_CASE("reducible curves") {
        Curve11 r1 = curve(point(1, 0, 0), line(0, 1, 0));
        Curve11 r2 = curve(point(1, 0, 0), line(0, 0, 1));
        CHECK(intersect(r1, r2).kind == Intersection::SharedComponent);
        std::mt19937_64 rng(12);
        for (int k = 0; k < 20; ++k) {
            Curve11 s = curve(th::rpt(rng), th::rln(rng));
            Intersection I = intersect(s, r1);
            for (auto& x : I.points) {
                CHECK(contains(s, x, 1e-8));
                CHECK(contains(r1, x, 1e-8));
            }
        }
    }

    TEST_CASE("intersection agrees with the linear-system oracle") {
        std::mt19937_64 rng(13);
        int nonempty = 0;
        for (int k = 0; k < 400; ++k) {
            ProjVec q1 = th::rpt(rng), q2 = k % 2 ? q1 : th::rpt(rng);
            ProjVec m1 = th::rln(rng), m2 = k % 3 == 0 ? m1 : th::rln(rng);
            if (q1.v == q2.v && m1.v == m2.v) continue;
            Curve11 c1 = curve(q1, m1), c2 = curve(q2, m2);
            auto o = oracle::meet_lqm(q1.v, m1.v, q2.v, m2.v);
            Intersection I = intersect(c1, c2);
            REQUIRE((I.kind == Intersection::OnePoint) == (o.kind == 1));
            if (o.kind == 1) {
                ++nonempty;
                CHECK(flag_eq(I.points[0], FlagPoint{normalize(point(o.p)), normalize(line(o.l))}, 1e-8));
            }
        }
        CHECK(nonempty > 100);
    }

    TEST_CASE("j maps L_{q,m} to L_{m*,q*}") {
        std::mt19937_64 rng(14);
        for (int k = 0; k < 50; ++k) {
            Curve11 L = curve(th::rpt(rng), th::rln(rng));
            Curve11 J = curve(star(L.m), star(L.q));
            for (int s = 0; s < 5; ++s) CHECK(contains(J, j(param(L, random_cplx(rng, 3)))));
            if (!is_twistor_fiber(L)) CHECK(intersect(L, J).kind == Intersection::Empty);
        }
    }

    TEST_CASE("twistor fibers") {
        CHECK(is_twistor_fiber(curve(point(1, 0, 0), line(1, 0, 0))));
        CHECK_FALSE(is_twistor_fiber(curve(point(1, 0, 0), line(1, 1, 0))));
        std::mt19937_64 rng(15);
        for (int k = 0; k < 20; ++k) {
            ProjVec q = th::rpt(rng);
            CHECK(is_twistor_fiber(curve(q, star(q))));
        }
    }
}
