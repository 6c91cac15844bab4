#include "twistor/twistor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace tw {

namespace {

// Rows spanning the points p with p·conj(q) = 0, orthonormal.
Eigen::Matrix<cplx, 2, 3> orth_rows(const Vec3& q) {
    Eigen::Matrix<cplx, 1, 3> qh = q.adjoint();
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 1, 3>> svd(qh, Eigen::ComputeFullV);
    Eigen::Matrix<cplx, 3, 2> V = svd.matrixV().rightCols<2>();
    return V.transpose();
}

struct Acc {
    cplx v = 0;
    double abs = 0;
    void add(cplx t) {
        v += t;
        abs += std::abs(t);
    }
};

// The two-brace polynomial in the variables v with the correction terms (corr = true).
void brace_terms(cplx l, cplx a, cplx b, cplx c, const Vec3& v, bool corr, cplx& R, double& scale) {
    cplx q0 = v(0), q1 = v(1), q2 = v(2);
    cplx Q0 = std::conj(q0), Q1 = std::conj(q1);
    double n0 = std::norm(q0), n1 = std::norm(q1), n2 = std::norm(q2);

    Acc t1;
    t1.add(n0 * (l - 1.0));
    t1.add(n1 * l);
    t1.add(n2);
    t1.add(a * Q0 * q1);
    t1.add(b * Q0 * q2);
    t1.add(c * Q1 * q2);

    Acc t2;
    t2.add(n0 * n2 * (l - 1.0));
    t2.add(a * c * Q0 * q2 * n0);
    t2.add(a * c * Q0 * q2 * n1 * (l + 1.0));
    t2.add(a * c * Q0 * q2 * n2);
    t2.add(-a * Q0 * q1 * n2 * (l - 1.0));
    t2.add(-b * Q0 * q1 * n1);
    t2.add(c * Q1 * q2 * n0 * l);
    t2.add(c * Q1 * q2 * n1 * l);
    t2.add(c * Q1 * q2 * n2);

    Acc k;
    if (corr) {
        k.add(-4.0 * Q0 * Q0 * b * l * q0 * q2);
        k.add(4.0 * Q0 * Q0 * b * q0 * q2);
        k.add(4.0 * Q0 * Q1 * a * c * l * q1 * q2);
        k.add(-4.0 * Q0 * Q1 * b * l * q1 * q2);
        k.add(-4.0 * Q0 * Q1 * b * q1 * q1);
        k.add(4.0 * Q0 * Q1 * b * q1 * q2);
    }
    R = t1.v * t1.v - 4.0 * t2.v + k.v;
    scale = t1.abs * t1.abs + 4.0 * t2.abs + k.abs;
}

double rel_scale(cplx l, cplx a, cplx b, cplx c) {
    return std::max({1.0, std::abs(l), std::abs(a), std::abs(b), std::abs(c)});
}

}  // namespace

ConicMatrix conic_matrix(const Mat3& A, const ProjVec& q) {
    Mat3 M = -cross_matrix(q.v) * A.transpose();
    return {(M + M.transpose()) / 2.0, q};
}

ConicMatrix conic_matrix(const Surface11& S, const ProjVec& q) { return conic_matrix(S.A, q); }

FiberPreimages fiber_preimages(const Surface11& S, const ProjVec& qin) {
    ProjVec q = normalize(qin);
    Mat3 C = conic_matrix(S.A, q).C;
    auto W = orth_rows(q.v);
    Row3 u = W.row(0), v = W.row(1);
    cplx al = (u * C * u.transpose())(0);
    cplx be = (u * C * v.transpose())(0);
    cplx ga = (v * C * v.transpose())(0);

    FiberPreimages out;
    if (std::max({std::abs(al), std::abs(be), std::abs(ga)}) < 1e-10) {
        out.whole_fiber = true;
        return out;
    }
    // al s^2 + 2 be s t + ga t^2 = 0, both roots in homogeneous form
    cplx sq = std::sqrt(be * be - al * ga);
    if (std::real(std::conj(be) * sq) < 0) sq = -sq;
    cplx w = -be - sq;
    std::array<std::pair<cplx, cplx>, 2> roots{{{w, al}, {ga, w}}};
    for (auto [s, t] : roots) {
        if (std::abs(s) + std::abs(t) < 1e-14) continue;
        Row3 p = s * u + t * v;
        ProjVec pp = normalize(point(p.transpose()));
        FlagPoint x = make_flag(pp, cross(pp, q), 1e-6);
        bool dup = false;
        for (const auto& y : out.points)
            if (proj_eq(y.p, x.p, 1e-9)) dup = true;
        if (!dup) out.points.push_back(x);
    }
    return out;
}

std::vector<cplx> solve_norm_quadratic(cplx e, cplx f, double tol) {
    if (e == cplx(0)) throw Error("solve_norm_quadratic needs e != 0");
    double E = std::norm(e);
    double D = E * E - 4 * f.real() * E - 4 * f.imag() * f.imag();
    if (D < -tol * E * E) return {};
    cplx i(0, 1);
    if (std::abs(D) <= tol * E * E) return {-(E / 2 + i * f.imag()) / e};
    double r = std::sqrt(D);
    return {-(E / 2 + r / 2 + i * f.imag()) / e, -(E / 2 - r / 2 + i * f.imag()) / e};
}

std::string to_string(FiberSet::Kind k) {
    switch (k) {
        case FiberSet::Empty: return "empty";
        case FiberSet::One: return "one";
        case FiberSet::Two: return "two";
        case FiberSet::Circle: return "circle";
    }
    return "?";
}

ProjVec FiberSet::circle_point(double theta) const {
    Row3 z(1.0, 0.0, std::sqrt(circle_lambda - 1) * std::polar(1.0, theta));
    return normalize(point((z * frame).transpose()));
}

FiberCondition fiber_condition(cplx l, cplx a, cplx b, cplx c, double tol) {
    double M = rel_scale(l, a, b, c);
    double M3 = M * M * M, M4 = M3 * M;
    bool na = std::abs(a) / M > tol, nb = std::abs(b) / M > tol, nc = std::abs(c) / M > tol;
    double l0 = l.real(), l1 = l.imag();
    double A2 = std::norm(a), B2 = std::norm(b), C2 = std::norm(c);
    FiberCondition out;

    if (nb && nc && std::abs(B2 * (1.0 - l) - C2 * l - a * std::conj(b) * c) / M3 < tol) return {"i", 1, false};
    if (na && nc && std::abs(A2 * (1.0 - l) + C2 + a * std::conj(b) * c) / M3 < tol) return {"ii", 1, false};
    if (na && nb && std::abs(A2 * l + B2 - a * std::conj(b) * c) / M3 < tol) return {"iii", 1, false};

    int nonzero = int(na) + int(nb) + int(nc);
    if (nonzero >= 2) return out;

    double D;
    std::string one, two;
    if (na || nonzero == 0) {
        D = A2 * A2 - 4 * A2 * (std::norm(l) - l0) - 4 * l1 * l1;
        one = "iv";
        two = "vii";
    } else if (nb) {
        D = B2 * B2 - 4 * (1 - l0) * B2 - 4 * l1 * l1;
        one = "v";
        two = "viii";
    } else {
        D = C2 * C2 - 4 * l0 * C2 - 4 * l1 * l1;
        one = "vi";
        two = "ix";
    }
    if (std::abs(D) / M4 <= tol) return {one, 1, true};
    if (D > 0) return {two, 2, false};
    return out;
}

std::array<double, 3> fiber_condition_residuals(cplx l, cplx a, cplx b, cplx c, double tol) {
    double M = rel_scale(l, a, b, c);
    double M3 = M * M * M;
    bool na = std::abs(a) / M > tol, nb = std::abs(b) / M > tol, nc = std::abs(c) / M > tol;
    double A2 = std::norm(a), B2 = std::norm(b), C2 = std::norm(c);
    const double inf = std::numeric_limits<double>::infinity();
    return {nb && nc ? std::abs(B2 * (1.0 - l) - C2 * l - a * std::conj(b) * c) / M3 : inf,
            na && nc ? std::abs(A2 * (1.0 - l) + C2 + a * std::conj(b) * c) / M3 : inf,
            na && nb ? std::abs(A2 * l + B2 - a * std::conj(b) * c) / M3 : inf};
}

double d0_residual(const Mat3& A, const ProjVec& q) {
    auto W = orth_rows(q.v / q.v.norm());
    Eigen::Matrix2cd T = W * A * W.adjoint();
    return (T - (T.trace() / 2.0) * Eigen::Matrix2cd::Identity()).norm() / A.norm();
}

double fiber_containment_residual(const Mat3& A, const ProjVec& q, int n) {
    Curve11 L = twistor_fiber(normalize(q));
    double worst = 0;
    for (int k = 0; k < n; ++k) {
        cplx t = k == 0 ? cplx(0) : std::polar(0.5 + 2.0 * k / n, 2 * std::numbers::pi * k * 0.618);
        FlagPoint x = param(L, t);
        cplx v = x.p.v.transpose() * A * x.l.v;
        worst = std::max(worst, std::abs(v) / (x.p.v.norm() * A.norm() * x.l.v.norm()));
    }
    return worst;
}

std::vector<ProjVec> d0_candidates(const Mat3& A, std::vector<std::string>* warnings) {
    Eigen::ComplexEigenSolver<Mat3> es(A, false);
    std::vector<ProjVec> out;
    for (int k = 0; k < 3; ++k) {
        cplx mu = es.eigenvalues()(k);
        Mat3 B = A - mu * Mat3::Identity();
        Eigen::JacobiSVD<Mat3> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Vec3 kR = svd.matrixV().col(2);
        Row3 kL = svd.matrixU().col(2).adjoint();
        double par = std::abs((kL * kR)(0));
        if (par < 1 - 1e-10) {
            Vec3 q(kR(1) * std::conj(kL(2)) - kR(2) * std::conj(kL(1)),
                   kR(2) * std::conj(kL(0)) - kR(0) * std::conj(kL(2)),
                   kR(0) * std::conj(kL(1)) - kR(1) * std::conj(kL(0)));
            if (q.norm() > kZeroTol) out.push_back(normalize(point(q)));
            continue;
        }
        // kR parallel to conj(kL): solve a norm quadratic in the plane x·kR = 0
        Eigen::Matrix<cplx, 1, 3> kt = kR.transpose();
        Eigen::JacobiSVD<Eigen::Matrix<cplx, 1, 3>> ps(kt, Eigen::ComputeFullV);
        Eigen::Matrix<cplx, 2, 3> P = ps.matrixV().rightCols<2>().transpose();
        Eigen::Matrix2cd T = P * B * P.adjoint();
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> e2(T.transpose());
        Eigen::Vector2cd y = e2.eigenvectors().col(0).normalized();
        Eigen::Matrix2cd Q;
        Q << -std::conj(y(1)), std::conj(y(0)), y(0), y(1);
        Eigen::Matrix<cplx, 2, 3> UV = Q * P;
        Eigen::Matrix2cd T2 = Q * T * Q.adjoint();
        if (std::abs(T2(0, 0)) < 1e-12 || std::abs(T2(0, 1)) < 1e-12 * std::abs(T2(0, 0))) {
            if (warnings) warnings->push_back("degenerate eigen-kernel configuration skipped");
            continue;
        }
        cplx e = -T2(0, 1) / T2(0, 0);
        cplx f = T2(1, 1) / T2(0, 0);
        for (cplx w : solve_norm_quadratic(e, f)) {
            Row3 q = UV.row(0) + std::conj(w) * UV.row(1);
            out.push_back(normalize(point(q.transpose())));
        }
    }
    return out;
}

FiberSet twistor_fibers_in(const Surface11& S) {
    FiberSet fs;
    auto es = eigenstructure(S);

    auto verified = [&](std::vector<std::string>* w) {
        std::vector<std::pair<double, ProjVec>> good;
        for (const auto& q : d0_candidates(S.A, w)) {
            double r = fiber_containment_residual(S.A, q);
            if (r >= 1e-8) continue;
            bool dup = false;
            for (auto& g : good)
                if (proj_eq(g.second, q, 1e-6)) dup = true;
            if (!dup) good.push_back({r, q});
        }
        std::sort(good.begin(), good.end(), [](auto& x, auto& y) { return x.first < y.first; });
        std::vector<ProjVec> pts;
        for (auto& g : good) pts.push_back(g.second);
        return pts;
    };

    if (es.groups.size() != 3) {
        auto sl = singular_locus(S);
        if (is_j_invariant(S) && sl.kind == SingularLocus::Curve && sl.curve->kind == Curve11::Smooth &&
            is_twistor_fiber(*sl.curve, 1e-6)) {
            fs.kind = FiberSet::One;
            fs.points = {sl.curve->q};
            fs.condition = "singular";
            return fs;
        }
        fs.warnings.push_back("non-smooth surface: fibers from the eigen-kernel search only");
        fs.points = verified(&fs.warnings);
        if (fs.points.size() > 2) fs.points.resize(2);
        fs.kind = fs.points.empty() ? FiberSet::Empty : fs.points.size() == 1 ? FiberSet::One : FiberSet::Two;
        fs.condition = "none";
        return fs;
    }

    if (is_j_invariant(S)) {
        const auto& G = es.groups;
        std::array<int, 3> perm{0, 1, 2};
        do {
            cplx l = (G[perm[2]].value - G[perm[0]].value) / (G[perm[1]].value - G[perm[0]].value);
            if (l.real() > 1 && l.real() <= 2 + 1e-12) {
                fs.circle_lambda = l.real();
                Mat3 U;
                for (int k = 0; k < 3; ++k) U.col(k) = G[perm[k]].right[0].normalized();
                fs.frame = U.adjoint();
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        fs.kind = FiberSet::Circle;
        fs.condition = "circle";
        return fs;
    }

    UnitaryForm f = unitary_canonical_form(S);
    FiberCondition c = fiber_condition(f.lambda, f.a, f.b, f.c);
    fs.condition = c.label.empty() ? "none" : c.label;
    fs.boundary = c.boundary;
    if (c.label.empty()) {
        int zeros = int(std::abs(f.a) < 1e-9) + int(std::abs(f.b) < 1e-9) + int(std::abs(f.c) < 1e-9);
        if (zeros == 2) fs.warnings.push_back("two of a,b,c vanish with negative discriminant: empty by default");
    }
    auto pts = verified(&fs.warnings);
    if (int(pts.size()) != c.count)
        fs.warnings.push_back("eigen-kernel search found " + std::to_string(pts.size()) +
                              " fibers, conditions give " + std::to_string(c.count));
    if (int(pts.size()) > c.count) pts.resize(c.count);
    fs.points = pts;
    fs.kind = c.count == 0 ? FiberSet::Empty : c.count == 1 ? FiberSet::One : FiberSet::Two;
    return fs;
}

cplx branch_R_printed(cplx l, cplx a, cplx b, cplx c, const Vec3& q) {
    cplx R;
    double s;
    brace_terms(l, a, b, c, q, false, R, s);
    return R;
}

BranchSample branch_R(const UnitaryForm& f, const ProjVec& qin) {
    BranchSample out;
    out.q = qin;
    Vec3 q = qin.v;
    brace_terms(f.lambda, f.a, f.b, f.c, q.conjugate(), true, out.R, out.scale);
    out.R_printed = branch_R_printed(f.lambda, f.a, f.b, f.c, q);

    bool toric = std::max({std::abs(f.a), std::abs(f.b), std::abs(f.c)}) < 1e-12 * rel_scale(f.lambda, 0, 0, 0);
    if (toric && std::abs(f.lambda.imag()) > 1e-12) {
        cplx al = std::sqrt(f.lambda - 1.0);
        cplx be = std::sqrt(f.lambda);
        if ((al.real() * be.real() + al.imag() * be.imag()) / al.imag() < 0) be = -be;
        if (al.imag() * be.real() < 0) al = -al;
        double x0 = std::abs(q(0)), x1 = std::abs(q(1)), x2 = std::abs(q(2));
        cplx i(0, 1);
        out.factors = std::array<cplx, 4>{x0 * al - i * x1 * be - x2, x0 * al + i * x1 * be - x2,
                                          x0 * al - i * x1 * be + x2, x0 * al + i * x1 * be + x2};
    }
    return out;
}

BranchSample branch_R(const Surface11& S, const ProjVec& q) {
    UnitaryForm f = unitary_canonical_form(S);
    Row3 z = q.v.transpose() * f.U;
    BranchSample s = branch_R(f, point(z.transpose()));
    s.q = q;
    return s;
}

RankDrop rank_drop_system(const UnitaryForm& f, const ProjVec& qf) {
    RankDrop r;
    r.q_frame = qf;
    Mat3 C = conic_matrix(f.triangular(), qf).C;
    Vec3 qb = qf.v.conjugate();
    r.M.topRows<3>() = cross_matrix(qb) * C;
    r.M.row(3) = qb.transpose();
    for (int i = 0; i < 4; ++i) {
        Mat3 D;
        int k = 0;
        for (int row = 0; row < 4; ++row)
            if (row != i) D.row(k++) = r.M.row(row);
        r.minors[i] = D.determinant();
    }
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 4, 3>> svd(r.M);
    auto sv = svd.singularValues();
    r.scale = sv(0);
    r.rank = 0;
    for (int k = 0; k < 3; ++k)
        if (sv(k) > 1e-9 * sv(0)) ++r.rank;
    return r;
}

RankDrop rank_drop_system(const Surface11& S, const ProjVec& q) {
    UnitaryForm f = unitary_canonical_form(S);
    Row3 z = q.v.transpose() * f.U;
    return rank_drop_system(f, point(z.transpose()));
}

cplx conjugate_intersection_det(const Mat3& A, const ProjVec& p) {
    Row3 r = p.v.transpose();
    Mat3 D;
    D.row(0) = r;
    D.row(1) = r * A;
    D.row(2) = r * A.adjoint();
    return D.determinant();
}

std::vector<BranchZero> find_branch_zeros(const UnitaryForm& f, int starts, std::uint64_t seed, double accept) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    auto eval = [&](const Eigen::Vector4d& x, double* scale) {
        Vec3 q(1.0, cplx(x(0), x(1)), cplx(x(2), x(3)));
        BranchSample s = branch_R(f, point(q));
        if (scale) *scale = s.scale;
        return s.R;
    };
    std::vector<BranchZero> out;
    for (int s = 0; s < starts; ++s) {
        Eigen::Vector4d x;
        for (int k = 0; k < 4; ++k) x(k) = n(rng);
        double sc = 1;
        cplx R = eval(x, &sc);
        for (int it = 0; it < 80 && std::abs(R) > 1e-15 * sc; ++it) {
            Eigen::Matrix<double, 2, 4> J;
            for (int k = 0; k < 4; ++k) {
                double h = 1e-7 * std::max(1.0, std::abs(x(k)));
                Eigen::Vector4d xp = x, xm = x;
                xp(k) += h;
                xm(k) -= h;
                cplx d = (eval(xp, nullptr) - eval(xm, nullptr)) / (2 * h);
                J(0, k) = d.real();
                J(1, k) = d.imag();
            }
            Eigen::Matrix2d JJ = J * J.transpose();
            if (std::abs(JJ.determinant()) < 1e-300) break;
            Eigen::Vector2d r(R.real(), R.imag());
            Eigen::Vector4d step = -J.transpose() * JJ.ldlt().solve(r);
            double t = 1;
            for (int back = 0; back < 20; ++back, t /= 2) {
                double sn;
                cplx Rn = eval(x + t * step, &sn);
                if (std::abs(Rn) < std::abs(R) || back == 19) {
                    x += t * step;
                    R = Rn;
                    sc = sn;
                    break;
                }
            }
        }
        double res = std::abs(R) / sc;
        if (!(res < accept)) continue;
        ProjVec q = normalize(point(Vec3(1.0, cplx(x(0), x(1)), cplx(x(2), x(3)))));
        bool dup = false;
        for (const auto& z : out)
            if (proj_dist(z.q, q) < 1e-6) dup = true;
        if (!dup) out.push_back({q, res});
    }
    return out;
}

}  // namespace tw
