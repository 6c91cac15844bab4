// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twistor/counts.hpp"
#include "twistor/metric.hpp"
#include "twistor/sampling.hpp"
#include "twistor/twistor.hpp"

using namespace tw;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(const char* f, double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat3 triangular(cplx l, cplx a, cplx b, cplx c) {
    Mat3 A;
    A << 0, a, b, 0, 1, c, 0, 0, l;
    return A;
}

Mat3 diag(cplx l) { return triangular(l, 0, 0, 0); }

ProjVec fs_point(std::mt19937_64& rng) { return normalize(point(gaussian_vec3(rng))); }

bool whole_fiber_in(const Surface11& S, const ProjVec& q, int n = 20) {
    Curve11 f = twistor_fiber(q);
    for (int k = 0; k < n; ++k) {
        cplx t = std::polar(std::tan(0.1 + 1.4 * k / n), 2.0 * k);
        if (!contains(S, param(f, t))) return false;
    }
    return true;
}

Verdict criterion1() {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    double r2 = std::sqrt(2.0);
    struct Fix {
        Mat3 A;
        FiberSet::Kind kind;
        std::vector<ProjVec> pts;
        const char* name;
    };
    std::vector<Fix> fx = {
        {triangular(2, 3, 0, 0), FiberSet::Two, {point(1, -1, 0), point(2, -1, 0)}, "a=3"},
        {triangular(2, 2 * r2, 0, 0), FiberSet::One, {point(1, -r2, 0)}, "a=2sqrt2"},
        {triangular(2, 2, 0, 0), FiberSet::Empty, {}, "a=2"},
    };
    for (auto& f : fx) {
        Surface11 S = surface_from_matrix(f.A);
        FiberSet fs = twistor_fibers_in(S);
        v.check(fs.kind == f.kind, std::string(f.name) + " kind " + to_string(fs.kind));
        for (auto& q : fs.points) v.check(whole_fiber_in(S, q), std::string(f.name) + " containment");
        if (fs.points.size() != f.pts.size()) continue;
        for (auto& e : f.pts) {
            double best = 1e9;
            for (auto& q : fs.points) best = std::min(best, proj_dist(e, q));
            v.check(best < 1e-9, std::string(f.name) + " location off by " + fmt("%.3g", best));
        }
    }
    double t = seconds_since(t0);
    v.check(t < 1.0, "runtime " + fmt("%.2fs", t));
    return v;
}

Verdict criterion2() {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2002);
    double worst = 1e9;
    for (double l : {1.2, 1.7, 2.0}) {
        Surface11 S = surface_from_matrix(diag(l));
        UnitaryForm uf{l, 0, 0, 0, Mat3::Identity()};
        double mn = 1e9;
        for (int k = 0; k < 10000; ++k) {
            auto b = branch_R(uf, fs_point(rng));
            mn = std::min(mn, std::abs(b.R) / b.scale);
        }
        worst = std::min(worst, mn);
        v.check(mn > 1e-3, "lambda=" + fmt("%.1f", l) + " min|R|/scale=" + fmt("%.3g", mn));
        double r = std::sqrt(l - 1);
        for (int k = 0; k < 50; ++k) {
            ProjVec q = point(1, 0, std::polar(r, 2 * M_PI * k / 50));
            if (!fiber_preimages(S, q).whole_fiber) {
                v.check(false, "circle sample not whole fiber at lambda=" + fmt("%.1f", l));
                break;
            }
        }
        int bad = 0;
        for (int k = 0; k < 1000; ++k) {
            auto fp = fiber_preimages(S, fs_point(rng));
            if (fp.whole_fiber || fp.points.size() != 2) ++bad;
        }
        v.check(bad == 0, std::to_string(bad) + " generic samples without two preimages");
    }
    double t = seconds_since(t0);
    v.check(t < 5.0, "runtime " + fmt("%.2fs", t));
    if (v.pass) v.detail = "min|R|/scale=" + fmt("%.3g", worst);
    return v;
}

Verdict criterion3() {
    Verdict v;
    cplx I(0, 1);
    Surface11 S = surface_from_matrix(diag(I));
    v.check(twistor_fibers_in(S).kind == FiberSet::Empty, "D0 not empty");
    UnitaryForm uf{I, 0, 0, 0, Mat3::Identity()};
    std::mt19937_64 rng(3003);
    double fac = 0;
    for (int k = 0; k < 10000; ++k) {
        auto b = branch_R(uf, fs_point(rng));
        if (!b.factors) {
            v.check(false, "no factorization");
            break;
        }
        auto& F = *b.factors;
        fac = std::max(fac, std::abs(b.R - F[0] * F[1] * F[2] * F[3]) / b.scale);
    }
    v.check(fac < 1e-9, "factorization residual " + fmt("%.3g", fac));

    auto zeros = find_branch_zeros(uf, 400, 77);
    v.check(zeros.size() >= 100, std::to_string(zeros.size()) + " zeros found");
    double worst_mm = 0, min_other = 1e9, rot = 0;
    for (auto& z : zeros) {
        ProjVec q = normalize(z.q);
        auto F = *branch_R(uf, q).factors;
        worst_mm = std::max(worst_mm, std::abs(F[0]));
        for (int k = 1; k < 4; ++k) min_other = std::min(min_other, std::abs(F[k]));
    }
    std::uniform_real_distribution<double> U(0, 2 * M_PI);
    for (int r = 0; r < 10; ++r) {
        double t1 = U(rng), t2 = U(rng);
        for (auto& z : zeros) {
            ProjVec q = normalize(z.q);
            ProjVec qr = point(q.v(0), std::polar(1.0, t1) * q.v(1), std::polar(1.0, t2) * q.v(2));
            auto b = branch_R(uf, qr);
            rot = std::max(rot, std::abs(b.R) / b.scale);
        }
    }
    v.check(worst_mm < 1e-8, "max|R--| " + fmt("%.3g", worst_mm));
    v.check(min_other > 1e-3, "min other factor " + fmt("%.3g", min_other));
    v.check(rot < 1e-9, "rotated zero residual " + fmt("%.3g", rot));
    if (v.pass) v.detail = std::to_string(zeros.size()) + " zeros";
    return v;
}

Verdict criterion4() {
    Verdict v;
    double r2 = std::sqrt(2.0);
    std::vector<double> as = {1.0, 2 * r2, 6.0};
    std::vector<int> want = {0, 1, 2};
    for (size_t i = 0; i < as.size(); ++i) {
        double a = as[i];
        TorusProfile tp = torus_profile(a);
        v.check(tp.singular_count == want[i], "a=" + fmt("%.4g", a) + " count " + std::to_string(tp.singular_count));
        if (a * a < 8) continue;
        // printed closed form: 2x = -a ± sqrt(a^2 - 8)
        double d = std::sqrt(std::max(0.0, a * a - 8));
        std::vector<double> printed = {(-a - d) / 2, (-a + d) / 2};
        for (double x : printed) {
            double best = 1e9;
            for (double y : tp.singular_x) best = std::min(best, std::abs(x - y));
            v.check(best < 1e-9, "a=" + fmt("%.4g", a) + " root " + fmt("%.6g", x) + " off by " + fmt("%.3g", best));
        }
        if (i == 1) {
            bool hit = false;
            for (double y : tp.singular_x) hit |= std::abs(y + r2) < 1e-9;
            v.check(hit, "double root at " + fmt("%.9f", tp.singular_x.empty() ? NAN : tp.singular_x[0]) +
                             " not -sqrt2");
        }
    }
    return v;
}

Verdict criterion5() {
    Verdict v;
    std::mt19937_64 rng(5005);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        Curve11 c = curve(fs_point(rng), random_projvec(rng, Flavor::Line));
        ImageQuadric Q = image_quadric(c);
        for (int s = 0; s < 100; ++s) {
            Vec3 z = twistor_projection(param(c, random_cplx(rng, 3.0))).v;
            worst = std::max(worst, std::abs(Q.eval(z)) / (z.squaredNorm() * Q.Phi.norm()));
        }
    }
    v.check(worst < 1e-8, "containment " + fmt("%.3g", worst));
    double rho_drift = 0;
    for (int k = 0; k < 20; ++k) {
        Curve11 c = curve(fs_point(rng), random_projvec(rng, Flavor::Line));
        double rho = sphere_normal_form(c).rho;
        for (int r = 0; r < 10; ++r) {
            Mat3 V = random_unitary(rng);
            Row3 mq = c.q.v.transpose() * V.adjoint();
            Vec3 mm = V * c.m.v;
            Curve11 c2 = curve(point(mq.transpose()), line(mm));
            rho_drift = std::max(rho_drift, std::abs(sphere_normal_form(c2).rho - rho) / std::max(1.0, rho));
        }
    }
    v.check(rho_drift < 1e-9, "rho drift " + fmt("%.3g", rho_drift));
    double ends = 0, ident = 0;
    for (double rho : {0.5, 2.0, 8.0}) {
        int n = 2001;
        ProfileCurve pc = profile_curve(rho, n);
        ends = std::max({ends, std::abs(pc.samples.front().f), std::abs(pc.samples.back().f)});
        double h = pc.samples[1].v - pc.samples[0].v, G = rho * rho / (1 + rho * rho);
        auto d = [&](int i, auto get) {
            return (get(i - 2) - 8 * get(i - 1) + 8 * get(i + 1) - get(i + 2)) / (12 * h);
        };
        for (int i = 2; i < n - 2; ++i) {
            if (i < 4 || i > n - 5) continue;  // stencil needs the closed-form f near the ends
            double fp = d(i, [&](int j) { return pc.samples[j].f; });
            double gp = d(i, [&](int j) { return pc.samples[j].g; });
            ident = std::max(ident, std::abs(fp * fp + gp * gp - G));
        }
    }
    v.check(ends < 1e-12, "f(+-pi/2) " + fmt("%.3g", ends));
    v.check(ident < 1e-6, "f'^2+g'^2 residual " + fmt("%.3g", ident));
    if (v.pass) v.detail = "identity residual " + fmt("%.3g", ident);
    return v;
}

Verdict criterion6() {
    Verdict v;
    v.check(h0_flag(1, 1) == 8, "h0_flag(1,1)");
    v.check(c1_squared(1, 1) == 6, "c1^2(1,1)");
    v.check(c1_squared(1, 2) == 2, "c1^2(1,2)");
    v.check(blowup_count_1d(2) == 7, "blowup_count_1d(2)");
    v.check(max_twistor_lines(1, 1) == 2, "max_twistor_lines(1,1)");
    v.check(max_twistor_lines(2, 1) == 6, "max_twistor_lines(2,1)");
    return v;
}

Verdict criterion7() {
    Verdict v;
    std::mt19937_64 rng(7007);
    int verdict_bad = 0, point_bad = 0, nonempty = 0;
    for (int k = 0; k < 1000; ++k) {
        ProjVec q1 = fs_point(rng), q2 = fs_point(rng);
        ProjVec m1 = random_projvec(rng, Flavor::Line), m2 = random_projvec(rng, Flavor::Line);
        int mode = k % 4;
        if (mode == 1) {  // force a common flag point
            FlagPoint x = random_flag(rng);
            auto [a, b] = pencil_basis(x.l);
            auto [c, d] = pencil_basis(x.p);
            q1 = normalize(point(Vec3(a.v + random_cplx(rng) * b.v)));
            q2 = normalize(point(Vec3(a.v + random_cplx(rng) * b.v)));
            m1 = normalize(line(Vec3(c.v + random_cplx(rng) * d.v)));
            m2 = normalize(line(Vec3(c.v + random_cplx(rng) * d.v)));
        } else if (mode == 2) {
            q2 = q1;
        } else if (mode == 3) {
            m2 = m1;
        }
        Curve11 c1 = curve(q1, m1), c2 = curve(q2, m2);
        Intersection I = intersect(c1, c2);
        auto o = oracle::meet_lqm(q1.v, m1.v, q2.v, m2.v);
        bool lib_nonempty = I.kind == Intersection::OnePoint;
        if (o.kind == 1) ++nonempty;
        if (lib_nonempty != (o.kind == 1) || (I.kind != Intersection::OnePoint && I.kind != Intersection::Empty)) {
            ++verdict_bad;
            continue;
        }
        if (o.kind == 1) {
            FlagPoint ox{normalize(point(o.p)), normalize(line(o.l))};
            if (!flag_eq(I.points[0], ox, 1e-8)) ++point_bad;
        }
    }
    v.check(verdict_bad == 0, std::to_string(verdict_bad) + " verdict mismatches");
    v.check(point_bad == 0, std::to_string(point_bad) + " point mismatches");

    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
        FlagPoint x = random_flag(rng);
        auto bad = [&](bool ok) { worst = std::max(worst, ok ? 0.0 : 1.0); };
        bad(flag_eq(j1(j1(x)), x));
        bad(flag_eq(j(j(x)), x));
        bad(flag_eq(j2(j2(x)), x));
        ProjVec z = twistor_projection(x);
        worst = std::max(worst, proj_dist(z, pi1(j2(x))));
        worst = std::max(worst, proj_dist(z, pi2_star(j1(x))));
        worst = std::max(worst, proj_dist(z, twistor_projection(j(x))));
    }
    v.check(worst < 1e-9, "flag identity residual " + fmt("%.3g", worst));
    if (v.pass) v.detail = std::to_string(nonempty) + " nonempty pairs";
    return v;
}

Verdict criterion8() {
    Verdict v;
    std::mt19937_64 rng(8008);
    ClassTag tags[] = {ClassTag::A1, ClassTag::A2, ClassTag::A3, ClassTag::A4, ClassTag::A5};
    std::uniform_real_distribution<double> U(-3, 3);
    for (ClassTag t : tags) {
        int wrong = 0;
        for (int k = 0; k < 1000; ++k) {
            cplx l = 2.0;
            if (t == ClassTag::A1) {
                do l = cplx(U(rng), U(rng));
                while (std::abs(l) < 1e-3 || std::abs(l - 1.0) < 1e-3);
            }
            Mat3 B = random_invertible(rng, 100);
            Mat3 A = B * canonical_matrix(t, l) * B.inverse();
            if (classify(A).tag != t) ++wrong;
        }
        v.check(wrong == 0, to_string(t) + " misclassified " + std::to_string(wrong));
    }
    int fn = 0, fp = 0;
    for (int k = 0; k < 1000; ++k) {
        cplx l;
        do l = cplx(U(rng), U(rng));
        while (std::abs(l) < 0.05 || std::abs(l - 1.0) < 0.05);
        cplx a = random_cplx(rng, 2), b = random_cplx(rng, 2), c = random_cplx(rng, 2);
        std::uniform_real_distribution<double> P(0, 2 * M_PI);
        double p1 = P(rng), p2 = P(rng);
        cplx a2 = a * std::polar(1.0, p1), b2 = b * std::polar(1.0, p2), c2 = c * std::polar(1.0, p2 - p1);
        Mat3 V1 = random_unitary(rng), V2 = random_unitary(rng);
        Surface11 S1 = surface_from_matrix(V1 * triangular(l, a, b, c) * V1.adjoint());
        Surface11 S2 = surface_from_matrix(V2 * triangular(l, a2, b2, c2) * V2.adjoint());
        if (!unitary_equivalent(S1, S2)) ++fn;
        Surface11 S3 = surface_from_matrix(V2 * triangular(l, a2 * (1 + 1e-3), b2, c2) * V2.adjoint());
        if (unitary_equivalent(S1, S3)) ++fp;
    }
    v.check(fn == 0, std::to_string(fn) + " orbit pairs rejected");
    v.check(fp == 0, std::to_string(fp) + " perturbed pairs accepted");
    return v;
}

Verdict criterion9() {
    Verdict v;
    cplx eta = std::polar(1.0, 2 * M_PI / 3), etab = std::conj(eta);
    Forms3 B1 = {monomial(1, 1, 0, 2.0) + monomial(0, 0, 2), monomial(1, 0, 1, 2.0) + monomial(0, 2, 0),
                 monomial(0, 1, 1, 2.0) + monomial(2, 0, 0)};
    std::vector<ProjVec> P1 = {line(0, 1, 0),          line(1, 1, 1),   line(1, -2, 1),
                               line(1, etab, eta),     line(1, -2.0 * etab, eta),
                               line(1, eta, etab),     line(1, -2.0 * eta, etab)};
    Forms3 B2 = {monomial(0, 2, 0), monomial(0, 0, 2), monomial(2, 0, 0)};
    std::vector<ProjVec> P2;
    for (int k = 0; k < 7; ++k) {
        cplx z = std::polar(1.0, 2 * M_PI * k / 7);
        P2.push_back(line(std::pow(z, 3), z, 1));
    }
    int bp1 = 0, bp2 = 0;
    for (auto& l : P1) bp1 += !base_points_1d(B1, l);
    for (auto& l : P2) bp2 += !base_points_1d(B2, l);
    v.check(bp1 == 0, "example 1: " + std::to_string(bp1) + " listed base points rejected");
    v.check(bp2 == 0, "example 2: " + std::to_string(bp2) + " listed base points rejected");

    using V3 = oracle::V3;
    auto Q1 = [](const V3& p) {
        return std::pow(p(1), 4) - 3.0 * p(0) * p(1) * p(1) * p(2) + p(1) * std::pow(p(2), 3) +
               std::pow(p(0), 3) * p(1) - p(0) * p(0) * p(2) * p(2);
    };
    auto Q2 = [](const V3& p) {
        return -p(0) * p(0) * (std::pow(p(0), 3) * p(1) + std::pow(p(1), 3) * p(2) + std::pow(p(2), 3) * p(0));
    };
    auto Q2quartic = [](const V3& p) {
        return std::pow(p(0), 3) * p(1) + std::pow(p(1), 3) * p(2) + std::pow(p(2), 3) * p(0);
    };
    std::mt19937_64 rng(9009);
    auto run = [&](const Forms3& B, auto Q, const char* name) {
        double worst = 0;
        int got = 0;
        while (got < 1000) {
            V3 a = gaussian_vec3(rng), b = gaussian_vec3(rng);
            for (cplx t : oracle::poly_roots(oracle::restrict_quartic(Q, a, b))) {
                if (got >= 1000) break;
                V3 p = a + t * b;
                ProjVec pp = normalize(point(p));
                BranchValue bv = branch_quartic_12_scaled(B, pp);
                worst = std::max(worst, std::abs(bv.value) / bv.scale);
                ++got;
            }
        }
        v.check(worst < 1e-8, std::string(name) + " worst |branch|/scale on displayed quartic " + fmt("%.3g", worst));
    };
    run(B1, Q1, "example 1");
    run(B2, Q2quartic, "example 2");
    (void)Q2;
    return v;
}

}  // namespace

int main() {
    std::vector<std::pair<const char*, std::function<Verdict()>>> crit = {
        {"fiber-count fixtures", criterion1},  {"diagonal branch locus", criterion2},
        {"toric factorization", criterion3},   {"torus profile", criterion4},
        {"sphere geometry", criterion5},       {"counts", criterion6},
        {"incidence core", criterion7},        {"classification", criterion8},
        {"(1,2) fixtures", criterion9},
    };
    int failed = 0;
    for (size_t i = 0; i < crit.size(); ++i) {
        Verdict v;
        try {
            v = crit[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %zu [%s]: %s%s%s\n", i + 1, crit[i].first, v.pass ? "PASS" : "FAIL",
                    v.detail.empty() ? "" : " : ", v.detail.c_str());
        failed += !v.pass;
    }
    return failed ? 1 : 0;
}
