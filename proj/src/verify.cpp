#include "twistor/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "twistor/counts.hpp"
#include "twistor/metric.hpp"
#include "twistor/sampling.hpp"

namespace tw {

namespace {

constexpr double kPi = std::numbers::pi;

struct Ctx {
    std::mt19937_64 rng;
    int n;  // requested samples
    int samples = 0;
    int failures = 0;
    double worst = 0;

    // residual must be below tol
    void add(double residual, double tol) {
        ++samples;
        if (!std::isfinite(residual)) residual = std::numeric_limits<double>::max();
        worst = std::max(worst, residual);
        if (!(residual < tol)) ++failures;
    }
    void expect(bool ok) { add(ok ? 0.0 : 1.0, 0.5); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    ProjVec pt() { return normalize(point(gaussian_vec3(rng))); }
    ProjVec ln() { return normalize(line(gaussian_vec3(rng))); }
    Curve11 smooth_curve() {
        for (;;) {
            ProjVec q = pt(), m = ln();
            if (incidence(q, m) > 1e-3) return curve(q, m);
        }
    }
};

Mat3 triangular(cplx l, cplx a, cplx b, cplx c) {
    Mat3 A;
    A << 0, a, b, 0, 1, c, 0, 0, l;
    return A;
}

// lambda away from the degenerate values 0 and 1 (eigenvalue gap > 1e-3)
cplx random_lambda(Ctx& c, double r = 3.0) {
    for (;;) {
        cplx l = random_cplx(c.rng, r);
        if (std::abs(l) > 1e-3 && std::abs(l - 1.0) > 1e-3) return l;
    }
}

ClassTag random_tag(Ctx& c) {
    static const ClassTag tags[] = {ClassTag::A1, ClassTag::A2, ClassTag::A3, ClassTag::A4, ClassTag::A5};
    return tags[std::uniform_int_distribution<int>(0, 4)(c.rng)];
}

Mat3 random_of_type(Ctx& c, ClassTag t, cplx* lambda = nullptr) {
    cplx l = t == ClassTag::A1 ? random_lambda(c) : cplx(2.0);
    if (lambda) *lambda = l;
    Mat3 B = random_invertible(c.rng, 100);
    return B * canonical_matrix(t, l) * B.inverse();
}

// Orthonormal null space of the rows (bilinear pairing).
std::vector<Vec3> null_rows(std::initializer_list<Vec3> rows) {
    Eigen::MatrixXcd M(rows.size(), 3);
    int i = 0;
    for (auto& r : rows) M.row(i++) = r.transpose() / r.norm();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    auto s = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < s.size(); ++k)
        if (s(k) > 1e-10) ++rank;
    std::vector<Vec3> out;
    for (int k = rank; k < 3; ++k) out.push_back(svd.matrixV().col(k));
    return out;
}

// Bilinear cross product (Eigen's complex cross conjugates).
Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

// ---- proj

void proj_cross_incidence(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        for (Flavor f : {Flavor::Point, Flavor::Line}) {
            ProjVec u = random_projvec(c.rng, f), v = random_projvec(c.rng, f);
            ProjVec w = cross(u, v);
            double r = f == Flavor::Point ? std::max(incidence(u, w), incidence(v, w))
                                          : std::max(incidence(w, u), incidence(w, v));
            c.add(r, 1e-9);
        }
    }
}

void proj_j1_vector_identity(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        FlagPoint x = random_flag(c.rng);
        Vec3 p = x.p.v, l = x.l.v;
        // j1 twice: l -> p x conj(l) -> p x (conj(p) x l) = -|p|^2 l
        Vec3 back = cross3(p, cross3(p.conjugate(), l));
        c.add(proj_dist(line(back), x.l), 1e-9);
        c.add(flag_eq(j1(j1(x)), x) ? 0.0 : 1.0, 0.5);
    }
}

void proj_normalize_equivalence(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        ProjVec u = random_projvec(c.rng, Flavor::Point);
        ProjVec a = normalize(u), b = normalize(a);
        c.add((a.v - b.v).norm(), 1e-14);
        ProjVec v{u.v * random_cplx(c.rng, 5.0), Flavor::Point}, w{u.v * random_cplx(c.rng, 5.0), Flavor::Point};
        if (v.v.norm() < 1e-6 || w.v.norm() < 1e-6) continue;
        bool eqv = proj_eq(u, u) && proj_eq(u, v) && proj_eq(v, u) && proj_eq(v, w) && proj_eq(u, w);
        ProjVec x = random_projvec(c.rng, Flavor::Point);
        bool sep = proj_dist(u, x) < 1e-3 || (!proj_eq(u, x) && !proj_eq(x, u));
        c.expect(eqv && sep);
    }
}

// ---- flag

void flag_s3_relations(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        FlagPoint x = random_flag(c.rng);
        c.expect(flag_eq(j1(j1(x)), x) && flag_eq(j(j(x)), x) && flag_eq(j2(j2(x)), x));
        c.expect(!flag_eq(j1(x), j(x)) && !flag_eq(j(x), j2(x)) && !flag_eq(j1(x), j2(x)));
        ProjVec z = twistor_projection(x);
        c.add(std::max({proj_dist(pi1(j(x)), pi2_star(x)), proj_dist(pi2_star(j(x)), pi1(x)),
                        proj_dist(z, pi1(j2(x))), proj_dist(z, pi2_star(j1(x))),
                        proj_dist(z, twistor_projection(j(x)))}),
              1e-9);
    }
}

void flag_unitary_splitting(Ctx& c) {
    auto h = [](const Vec3& a, const Vec3& b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); };
    for (int k = 0; k < c.n; ++k) {
        FlagPoint x = random_flag(c.rng);
        Vec3 p = x.p.v, w = cross3(p.conjugate(), x.l.v), ls = x.l.v.conjugate();
        c.add(std::max({h(p, w), h(p, ls), h(w, ls)}), 1e-9);
    }
}

void flag_kappa_conjugation(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        FlagPoint x = random_flag(c.rng);
        ProjVec z = twistor_projection(x);
        c.add(proj_dist(twistor_projection(kappa(x)), point(Vec3(z.v.conjugate()))), 1e-9);
    }
}

// ---- curves

void curves_intersection_oracle(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Curve11 c1 = c.smooth_curve(), c2 = c.smooth_curve();
        switch (k % 4) {
            case 1: {
                FlagPoint x = random_flag(c.rng);
                auto [a, b] = pencil_basis(x.l);
                auto [d, e] = pencil_basis(x.p);
                c1 = curve(point(Vec3(a.v + random_cplx(c.rng) * b.v)), line(Vec3(d.v + random_cplx(c.rng) * e.v)));
                c2 = curve(point(Vec3(a.v + random_cplx(c.rng) * b.v)), line(Vec3(d.v + random_cplx(c.rng) * e.v)));
                if (c1.kind != Curve11::Smooth || c2.kind != Curve11::Smooth) continue;
                break;
            }
            case 2: c2 = curve(c1.q, c2.m); break;
            case 3: c2 = curve(c2.q, c1.m); break;
        }
        if (c1.kind != Curve11::Smooth || c2.kind != Curve11::Smooth) continue;
        auto Nl = null_rows({c1.q.v, c2.q.v});
        auto Np = null_rows({c1.m.v, c2.m.v});
        bool meet = false;
        Vec3 p, l;
        if (Nl.size() == 1 && Np.size() == 1) {
            p = Np[0];
            l = Nl[0];
            meet = std::abs(p.dot(l.conjugate())) < 1e-8;
        } else if (Nl.size() == 2) {
            p = Np[0];
            l = cplx(p.transpose() * Nl[1]) * Nl[0] - cplx(p.transpose() * Nl[0]) * Nl[1];
            meet = true;
        } else if (Np.size() == 2) {
            l = Nl[0];
            p = cplx(Np[1].transpose() * l) * Np[0] - cplx(Np[0].transpose() * l) * Np[1];
            meet = true;
        }
        Intersection I = intersect(c1, c2);
        bool lib = I.kind == Intersection::OnePoint;
        if (lib != meet) {
            c.add(1.0, 1e-8);
            continue;
        }
        if (!meet) {
            c.add(0.0, 1e-8);
            continue;
        }
        c.add(std::max(proj_dist(I.points[0].p, point(p)), proj_dist(I.points[0].l, line(l))), 1e-8);
    }
}

void curves_j_image(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Curve11 L = c.smooth_curve();
        ProjVec q2 = star(L.m), m2 = star(L.q);
        double worst = 0;
        for (int s = 0; s < 10; ++s) {
            FlagPoint y = j(param(L, random_cplx(c.rng, 3.0)));
            worst = std::max({worst, incidence(q2, y.l), incidence(y.p, m2), incidence(y.p, y.l)});
        }
        c.add(worst, 1e-9);
    }
}

void curves_disjoint_from_j(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Curve11 L = c.smooth_curve();
        Curve11 J = curve(star(L.m), star(L.q));
        if (is_twistor_fiber(L)) continue;
        c.expect(intersect(L, J).kind == Intersection::Empty);
        Curve11 F = twistor_fiber(c.pt());
        Curve11 FJ = curve(star(F.m), star(F.q));
        c.expect(is_twistor_fiber(F) && proj_eq(F.q, FJ.q) && proj_eq(F.m, FJ.m));
    }
}

// ---- surfaces

bool same_class(const CanonicalClass& a, const CanonicalClass& b) {
    if (a.tag != b.tag) return false;
    return a.tag != ClassTag::A1 || same_orbit(a.lambda, b.lambda, 1e-6);
}

void surfaces_pencil_invariance(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Mat3 A = random_of_type(c, random_tag(c));
        cplx al;
        do al = random_cplx(c.rng, 3.0);
        while (std::abs(al) < 0.1);
        cplx be = random_cplx(c.rng, 3.0);
        c.expect(same_class(classify(A), classify(Mat3(al * A + be * Mat3::Identity()))));
    }
}

void surfaces_conjugation_invariance(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Mat3 A = random_of_type(c, random_tag(c));
        Mat3 B = random_invertible(c.rng, 100);
        c.expect(same_class(classify(A), classify(Mat3(B * A * B.inverse()))));
    }
}

void surfaces_smooth_iff_simple(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        ClassTag t = random_tag(c);
        Surface11 S = surface_from_matrix(random_of_type(c, t));
        bool smooth = singular_locus(S).kind == SingularLocus::Smooth;
        bool simple = eigenstructure(S).groups.size() == 3;
        c.expect(smooth == simple && simple == (t == ClassTag::A1));
    }
}

void surfaces_unitary_laws(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Mat3 A;
        for (int i = 0; i < 3; ++i) A.col(i) = gaussian_vec3(c.rng);
        Surface11 S = surface_from_matrix(A);
        Mat3 V = random_unitary(c.rng);
        Surface11 S2 = transform_surface(V, S);
        Mat3 A3;
        for (int i = 0; i < 3; ++i) A3.col(i) = gaussian_vec3(c.rng);
        Surface11 S3 = surface_from_matrix(A3);
        c.expect(unitary_equivalent(S, S) && unitary_equivalent(S, S2) && unitary_equivalent(S2, S) &&
                 unitary_equivalent(S, S3) == unitary_equivalent(S3, S));
    }
}

void surfaces_a3_incidence(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Mat3 A = random_of_type(c, ClassTag::A3);
        Surface11 S = surface_from_matrix(A);
        SingularLocus sl = singular_locus(S);
        if (sl.kind != SingularLocus::Point || !sl.point) {
            c.add(1.0, 1e-9);
            continue;
        }
        c.add(std::max(incidence(sl.point->p, sl.point->l), singular_system_residual(S.A, *sl.point, sl.eigenvalue)),
              1e-9);
    }
}

// ---- twistor

void twistor_preimage_consistency(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Mat3 A;
        for (int i = 0; i < 3; ++i) A.col(i) = gaussian_vec3(c.rng);
        Surface11 S = surface_from_matrix(A);
        ProjVec q = c.pt();
        FiberPreimages fp = fiber_preimages(S, q);
        BranchSample b = branch_R(S, q);
        bool ok = !fp.whole_fiber && fp.points.size() == 2 && std::abs(b.R) > 1e-12 * b.scale;
        double r = ok ? 0.0 : 1.0;
        for (auto& x : fp.points) r = std::max({r, incidence(x.p, x.l), proj_dist(twistor_projection(x), q)});
        if (ok) r = std::max(r, proj_dist(fp.points[0].p, fp.points[1].p) < 1e-6 ? 1.0 : 0.0);
        c.add(r, 1e-8);
        if (k >= 10) continue;
        UnitaryForm f = unitary_canonical_form(S);
        for (auto& z : find_branch_zeros(f, 2, c.rng())) {
            Row3 qa = z.q.v.transpose() * f.U.adjoint();
            FiberPreimages zp = fiber_preimages(S, point(qa.transpose()));
            double sep = zp.points.size() == 2 ? proj_dist(zp.points[0].p, zp.points[1].p) : 0.0;
            c.add(zp.whole_fiber ? 1.0 : sep, 1e-6);
        }
    }
}

struct Example {
    Mat3 A;
    int count;
};

void twistor_fiberset_oracle(Ctx& c) {
    const double r2 = std::sqrt(2.0);
    std::array<Example, 3> ex = {{{triangular(2, 3, 0, 0), 2}, {triangular(2, 2 * r2, 0, 0), 1},
                                  {triangular(2, 2, 0, 0), 0}}};
    for (auto& e : ex) {
        Surface11 S = surface_from_matrix(e.A);
        FiberSet fs = twistor_fibers_in(S);
        c.expect(int(fs.points.size()) == e.count);
        for (auto& q : fs.points) c.add(fiber_containment_residual(S.A, q, 20), 1e-8);
        for (int k = 0; k < c.n; ++k) {
            ProjVec q = c.pt();
            bool reported = false;
            for (auto& p : fs.points) reported |= proj_eq(p, q, 1e-6);
            if (!reported) c.expect(fiber_containment_residual(S.A, q, 20) > 1e-8);
        }
    }
}

void twistor_conditions_exclusive(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        cplx a = random_cplx(c.rng, 2.0), b = random_cplx(c.rng, 2.0), d = random_cplx(c.rng, 2.0);
        if (std::min({std::abs(a), std::abs(b), std::abs(d)}) < 0.05) continue;
        double A2 = std::norm(a), B2 = std::norm(b), C2 = std::norm(d);
        cplx t = a * std::conj(b) * d;
        cplx l;
        switch (k % 4) {
            case 0: l = (B2 - t) / (B2 + C2); break;
            case 1: l = (A2 + C2 + t) / A2; break;
            case 2: l = (t - B2) / A2; break;
            default: l = random_lambda(c);
        }
        if (std::abs(l) < 1e-3 || std::abs(l - 1.0) < 1e-3) continue;
        auto r = fiber_condition_residuals(l, a, b, d);
        int holding = int(r[0] < 1e-9) + int(r[1] < 1e-9) + int(r[2] < 1e-9);
        c.expect(holding <= 1 && (k % 4 == 3 || holding == 1));
    }
}

void twistor_torus_invariance(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        cplx l = random_lambda(c);
        UnitaryForm f{l, 0, 0, 0, Mat3::Identity()};
        ProjVec q = c.pt();
        ProjVec qr = point(q.v(0), std::polar(1.0, c.uniform(0, 2 * kPi)) * q.v(1),
                           std::polar(1.0, c.uniform(0, 2 * kPi)) * q.v(2));
        BranchSample a = branch_R(f, q), b = branch_R(f, qr);
        c.add(std::abs(a.R - b.R) / a.scale, 1e-12);
    }
}

void twistor_toric_factorization(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        cplx l;
        do l = random_lambda(c);
        while (std::abs(l.imag()) < 0.05);
        UnitaryForm f{l, 0, 0, 0, Mat3::Identity()};
        BranchSample b = branch_R(f, c.pt());
        if (!b.factors) {
            c.add(1.0, 1e-9);
            continue;
        }
        auto& F = *b.factors;
        c.add(std::abs(b.R - F[0] * F[1] * F[2] * F[3]) / b.scale, 1e-9);
    }
}

void twistor_circle_moment(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        double l = c.uniform(1.0 + 1e-3, 2.0);
        Surface11 S = surface_from_matrix(triangular(l, 0, 0, 0));
        FiberSet fs = twistor_fibers_in(S);
        if (fs.kind != FiberSet::Circle) {
            c.add(1.0, 1e-9);
            continue;
        }
        std::array<double, 3> mu0 = moment_map(fs.circle_point(0));
        double r = *std::min_element(mu0.begin(), mu0.end());
        for (int s = 0; s < 5; ++s) {
            ProjVec q = fs.circle_point(c.uniform(0, 2 * kPi));
            auto mu = moment_map(q);
            for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(mu[i] - mu0[i]));
            r = std::max(r, fiber_containment_residual(S.A, q, 20));
        }
        c.add(r, 1e-9);
    }
}

// ---- metric

void metric_sphere_containment(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Curve11 L = c.smooth_curve();
        ImageQuadric Q = image_quadric(L);
        double worst = 0;
        for (int s = 0; s < 100; ++s) {
            Vec3 z = twistor_projection(param(L, random_cplx(c.rng, 4.0))).v;
            worst = std::max(worst, std::abs(Q.eval(z)) / (z.squaredNorm() * Q.Phi.norm()));
        }
        c.add(worst, 1e-8);
    }
}

void metric_normal_form_equations(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        Curve11 L = c.smooth_curve();
        SphereNormalForm nf = sphere_normal_form(L);
        double rho = nf.rho, worst = 0;
        for (int s = 0; s < 100; ++s) {
            Vec3 z = twistor_projection(param(L, random_cplx(c.rng, 4.0))).v;
            Row3 w = z.transpose() * nf.U.adjoint();
            if (std::abs(w(0)) < 1e-6 * w.norm()) continue;
            cplx z1 = w(1) / w(0), z2 = w(2) / w(0);
            double sc = 1 + std::norm(z1) + std::norm(z2);
            double sphere = std::pow(z1.real() - rho, 2) + std::norm(z2) - rho * rho;
            worst = std::max({worst, std::abs(z1.imag()) / std::sqrt(sc), std::abs(sphere) / sc});
        }
        c.add(worst, 1e-8);
    }
}

// Fubini-Study distance between [1:z] and [1:w].
double fs_distance(cplx z1, cplx z2, cplx w1, cplx w2) {
    cplx ip = 1.0 + std::conj(z1) * w1 + std::conj(z2) * w2;
    double n = std::sqrt((1 + std::norm(z1) + std::norm(z2)) * (1 + std::norm(w1) + std::norm(w2)));
    return std::acos(std::min(1.0, std::abs(ip) / n));
}

void metric_profile_isometry(Ctx& c) {
    (void)c.rng;
    for (double rho : {0.5, 1.0, 2.0, 8.0}) {
        const int n = 2001;
        ProfileCurve pc = profile_curve(rho, n);
        auto at = [&](double u, double v) {
            return std::pair<cplx, cplx>{rho * std::sin(v), std::polar(rho * std::cos(v), u)};
        };
        int nodes = std::max(1, std::min(c.n, 50));
        for (int s = 0; s < nodes; ++s) {
            int i0 = 1 + (s * (n - 3)) / nodes, i1 = n - 1;
            // longitude from node i0 to the pole, fine FS polyline vs profile polyline
            double prof = 0, fs = 0;
            for (int i = i0; i < i1; ++i) {
                const auto &a = pc.samples[i], &b = pc.samples[i + 1];
                prof += std::hypot(b.f - a.f, b.g - a.g);
                const int sub = 8;
                for (int t = 0; t < sub; ++t) {
                    double v0 = a.v + (b.v - a.v) * t / sub, v1 = a.v + (b.v - a.v) * (t + 1) / sub;
                    auto [p1, p2] = at(0.3, v0);
                    auto [q1, q2] = at(0.3, v1);
                    fs += fs_distance(p1, p2, q1, q2);
                }
            }
            double lat = 0;
            const int m = 720;
            double v = pc.samples[i0].v;
            for (int t = 0; t < m; ++t) {
                auto [p1, p2] = at(2 * kPi * t / m, v);
                auto [q1, q2] = at(2 * kPi * (t + 1) / m, v);
                lat += fs_distance(p1, p2, q1, q2);
            }
            c.add(std::max(std::abs(prof - fs), std::abs(lat - 2 * kPi * pc.samples[i0].f)), 1e-4);
        }
    }
}

void metric_toric_moment(Ctx& c) {
    UnitaryForm f{cplx(0, 1), 0, 0, 0, Mat3::Identity()};
    int starts = std::max(1, std::min(c.n, 20));
    for (auto& z : find_branch_zeros(f, starts, c.rng())) {
        auto mu = moment_map(z.q);
        c.add(1e-3 / std::max(1e-300, *std::min_element(mu.begin(), mu.end())), 1.0);
    }
    FiberSet fs = twistor_fibers_in(surface_from_matrix(triangular(2, 0, 0, 0)));
    auto mu = moment_map(fs.circle_point(0.7));
    c.add(*std::min_element(mu.begin(), mu.end()), 1e-12);
}

// ---- counts

void counts_h0_recursion(Ctx& c) {
    int m = std::max(2, std::min(c.n, 40));
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b) c.expect(h0_flag(a, b) == h0_product(a, b) - h0_product(a - 1, b - 1));
}

void counts_line_bound(Ctx& c) {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b)
            c.expect(triple_product({a, b}, {b, a}, {1, 0}) == std::int64_t(a) * a + std::int64_t(a) * b + b * b);
}

void counts_symmetry(Ctx& c) {
    int m = std::max(2, std::min(c.n, 40));
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b)
            c.expect(h0_product(a, b) == h0_product(b, a) && h0_flag(a, b) == h0_flag(b, a) &&
                     c1_squared(a, b) == c1_squared(b, a) && max_twistor_lines(a, b) == max_twistor_lines(b, a) &&
                     max_11_curves_in_intersection(a, b) == max_11_curves_in_intersection(b, a) &&
                     triple_product({a, b}, {b, a}, {1, 0}) == triple_product({b, a}, {a, b}, {1, 0}));
}

// ---- verify / cli

bool same_record(const CheckRecord& a, const CheckRecord& b) {
    return a.name == b.name && a.samples == b.samples && a.failures == b.failures &&
           a.worst_residual == b.worst_residual && a.seed == b.seed;
}

void verify_determinism(Ctx& c) {
    std::uint64_t s = c.rng();
    int n = std::max(1, std::min(c.n, 20));
    for (auto name : {"proj.cross_incidence", "twistor.torus_invariance", "curves.intersection_oracle"})
        c.expect(same_record(run_check(name, s, n), run_check(name, s, n)));
}

void verify_coverage(Ctx& c);

bool bit_equal(const Vec3& a, const Vec3& b) {
    for (int k = 0; k < 3; ++k)
        if (a(k) != b(k)) return false;
    return true;
}

void cli_json_roundtrip(Ctx& c) {
    for (int k = 0; k < c.n; ++k) {
        ProjVec v = c.pt();
        ProjVec v2 = projvec_from_json(parse_json(dump(to_json(v))));
        FlagPoint x = random_flag(c.rng);
        FlagPoint x2 = flag_from_json(parse_json(dump(to_json(x))));
        Curve11 L = c.smooth_curve();
        Curve11 L2 = curve_from_json(parse_json(dump(to_json(L))));
        Mat3 A;
        for (int i = 0; i < 3; ++i) A.col(i) = gaussian_vec3(c.rng);
        Mat3 A2 = matrix_from_json(parse_json(dump(matrix_json(A))));
        CanonicalClass cc = classify(A);
        json jc = to_json(cc);
        json jf = to_json(twistor_fibers_in(surface_from_matrix(A)));
        bool ok = bit_equal(v.v, v2.v) && v.flavor == v2.flavor && bit_equal(x.p.v, x2.p.v) &&
                  bit_equal(x.l.v, x2.l.v) && bit_equal(L.q.v, L2.q.v) && bit_equal(L.m.v, L2.m.v) &&
                  L.kind == L2.kind && A == A2 &&
                  dump(to_json(canonical_class_from_json(parse_json(dump(jc))))) == dump(jc) &&
                  dump(to_json(fiberset_from_json(parse_json(dump(jf))))) == dump(jf);
        c.expect(ok);
    }
}

void cli_seed_determinism(Ctx& c) {
    int n = std::max(1, std::min(c.n, 10));
    for (int k = 0; k < n; ++k) {
        std::uint64_t s = c.rng();
        c.expect(bit_equal(random_projvec(s, Flavor::Point).v, random_projvec(s, Flavor::Point).v));
        UnitaryForm f{random_lambda(c), random_cplx(c.rng), random_cplx(c.rng), random_cplx(c.rng), Mat3::Identity()};
        auto z1 = find_branch_zeros(f, 1, s), z2 = find_branch_zeros(f, 1, s);
        bool same = z1.size() == z2.size();
        for (size_t i = 0; same && i < z1.size(); ++i) same = bit_equal(z1[i].q.v, z2[i].q.v);
        c.expect(same);
    }
}

struct Entry {
    std::string_view name;
    std::string_view anchor;
    void (*fn)(Ctx&);
};

constexpr Entry kRegistry[] = {
    {"proj.cross_incidence", "cross product is incident to both factors", proj_cross_incidence},
    {"proj.j1_vector_identity", "p x (p* x l)* reproduces l; j1 is an involution", proj_j1_vector_identity},
    {"proj.normalize_equivalence", "normalize idempotent; proj_eq an equivalence", proj_normalize_equivalence},
    {"flag.s3_relations", "j1, j, j2 generate S3 acting on pi1, pi, pi2*", flag_s3_relations},
    {"flag.unitary_splitting", "C3 = p + (p* x l) + l* orthogonally", flag_unitary_splitting},
    {"flag.kappa_conjugation", "kappa covers complex conjugation", flag_kappa_conjugation},
    {"curves.intersection_oracle", "intersection lemma vs five-equation system", curves_intersection_oracle},
    {"curves.j_image", "j(L_{q,m}) = L_{m*,q*}", curves_j_image},
    {"curves.disjoint_from_j", "L and j(L) disjoint unless L is a twistor fiber", curves_disjoint_from_j},
    {"surfaces.pencil_invariance", "classification depends only on the pencil", surfaces_pencil_invariance},
    {"surfaces.conjugation_invariance", "classification invariant under SL3 conjugation",
     surfaces_conjugation_invariance},
    {"surfaces.smooth_iff_simple", "S_A singular iff a repeated eigenvalue", surfaces_smooth_iff_simple},
    {"surfaces.unitary_laws", "unitary equivalence is reflexive, symmetric, U(3) invariant", surfaces_unitary_laws},
    {"surfaces.a3_incidence", "generalized eigenvectors give an incident singular point", surfaces_a3_incidence},
    {"twistor.preimage_consistency", "two preimages off the branch locus, one on it", twistor_preimage_consistency},
    {"twistor.fiberset_oracle", "fiber counts of the three triangular examples", twistor_fiberset_oracle},
    {"twistor.conditions_exclusive", "single-fiber conditions are mutually exclusive", twistor_conditions_exclusive},
    {"twistor.torus_invariance", "toric branch locus is torus invariant", twistor_torus_invariance},
    {"twistor.toric_factorization", "toric branch polynomial splits into four factors", twistor_toric_factorization},
    {"twistor.circle_moment", "Hermitian fiber circle maps to a boundary point", twistor_circle_moment},
    {"metric.sphere_containment", "twistor image of L_{q,m} is z Phi z* = 0", metric_sphere_containment},
    {"metric.normal_form_equations", "normal form image is a round sphere in y1 = 0", metric_normal_form_equations},
    {"metric.profile_isometry", "profile curve lengths match Fubini-Study lengths", metric_profile_isometry},
    {"metric.toric_moment", "toric branch locus maps to the interior of the simplex", metric_toric_moment},
    {"counts.h0_recursion", "h0 on F from the product and the incidence section", counts_h0_recursion},
    {"counts.line_bound", "twistor line bound a^2 + ab + b^2 as a triple product", counts_line_bound},
    {"counts.symmetry", "counts symmetric in (a,b)", counts_symmetry},
    {"verify.determinism", "identical seeds give identical records", verify_determinism},
    {"verify.coverage", "one check per listed invariant", verify_coverage},
    {"cli.json_roundtrip", "emitted JSON re-parses to identical values", cli_json_roundtrip},
    {"cli.seed_determinism", "seed fixes stochastic output", cli_seed_determinism},
};

constexpr int count_prefix(std::string_view prefix) {
    int n = 0;
    for (const auto& e : kRegistry)
        if (e.name.substr(0, prefix.size()) == prefix) ++n;
    return n;
}

struct Quota {
    std::string_view prefix;
    int invariants;
};
constexpr Quota kQuota[] = {{"proj.", 3},     {"flag.", 3},    {"curves.", 3}, {"surfaces.", 5}, {"twistor.", 5},
                            {"metric.", 4},   {"counts.", 3},  {"verify.", 2}, {"cli.", 2}};

constexpr bool registry_covers() {
    for (const auto& q : kQuota)
        if (count_prefix(q.prefix) < q.invariants) return false;
    return true;
}
static_assert(registry_covers(), "every module invariant needs a registered check");

void verify_coverage(Ctx& c) {
    for (const auto& q : kQuota) c.expect(count_prefix(q.prefix) >= q.invariants);
    for (size_t i = 0; i < std::size(kRegistry); ++i)
        for (size_t k = i + 1; k < std::size(kRegistry); ++k) c.expect(kRegistry[i].name != kRegistry[k].name);
}

CheckRecord run_entry(size_t index, std::uint64_t master, int samples) {
    const Entry& e = kRegistry[index];
    std::uint64_t s = split_seed(master, index);
    Ctx c{std::mt19937_64(s), samples};
    CheckRecord r{std::string(e.name), std::string(e.anchor), 0, 0, 0, s};
    try {
        e.fn(c);
    } catch (const std::exception&) {
        ++c.failures;
        c.worst = std::numeric_limits<double>::max();
    }
    r.samples = c.samples;
    r.failures = c.failures;
    r.worst_residual = c.worst;
    return r;
}

}  // namespace

int VerificationReport::failures() const {
    int n = 0;
    for (auto& c : checks) n += c.failures;
    return n;
}

std::vector<CheckInfo> registered_checks() {
    std::vector<CheckInfo> out;
    for (auto& e : kRegistry) out.push_back({e.name, e.anchor});
    return out;
}

CheckRecord run_check(std::string_view name, std::uint64_t seed, int samples) {
    for (size_t i = 0; i < std::size(kRegistry); ++i)
        if (kRegistry[i].name == name) return run_entry(i, seed, samples);
    throw Error("unknown check: " + std::string(name));
}

VerificationReport run_suite(std::uint64_t seed, int samples) {
    if (samples < 1) throw Error("samples must be at least 1");
    VerificationReport rep{seed, samples, {}};
    std::vector<std::future<CheckRecord>> jobs;
    for (size_t i = 0; i < std::size(kRegistry); ++i)
        jobs.push_back(std::async(std::launch::async, run_entry, i, seed, samples));
    for (auto& j : jobs) rep.checks.push_back(j.get());
    return rep;
}

json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"anchor", c.anchor},
                          {"samples", c.samples},
                          {"failures", c.failures},
                          {"worst_residual", c.worst_residual},
                          {"seed", c.seed}});
    return {{"seed", r.seed},
            {"samples", r.samples},
            {"failures", r.failures()},
            {"passed", r.passed()},
            {"checks", checks}};
}

}  // namespace tw
