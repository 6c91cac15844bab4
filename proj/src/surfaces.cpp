#include "twistor/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace tw {

namespace {

double traceless_norm(const Mat3& A) {
    return (A - (A.trace() / 3.0) * Mat3::Identity()).norm();
}

ProjVec unit_point(const Row3& r) { return normalize(point(r.transpose())); }
ProjVec unit_line(const Vec3& c) { return normalize(line(c)); }

Vec3 phase_fixed(const Vec3& v) { return normalize(point(v)).v; }

// (|l - 1/2|, Re l, Im l) compared with a small tie band.
bool key_less(cplx x, cplx y) {
    const double t = 1e-9;
    double kx = std::abs(x - 0.5), ky = std::abs(y - 0.5);
    if (std::abs(kx - ky) > t * std::max(1.0, ky)) return kx < ky;
    if (std::abs(x.real() - y.real()) > t * std::max(1.0, std::abs(y))) return x.real() < y.real();
    return x.imag() < y.imag() - t * std::max(1.0, std::abs(y));
}

}  // namespace

std::array<cplx, 3> sorted_eigenvalues(const Mat3& A) {
    Eigen::ComplexEigenSolver<Mat3> es(A, false);
    std::array<cplx, 3> ev{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
    double band = 1e-9 * std::max(traceless_norm(A), 1e-300);
    auto less = [band](cplx x, cplx y) {
        if (std::abs(x.real() - y.real()) > band) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    // insertion sort: the comparator is only a preorder inside the band
    for (int i = 1; i < 3; ++i)
        for (int k = i; k > 0 && less(ev[k], ev[k - 1]); --k) std::swap(ev[k], ev[k - 1]);
    return ev;
}

EigenStructure eigenstructure(const Mat3& A, double cluster_tol) {
    double s = traceless_norm(A);
    if (!(s > 0)) s = 1;
    auto ev = sorted_eigenvalues(A);

    EigenStructure out;
    out.min_gap = std::numeric_limits<double>::infinity();
    std::array<int, 3> root{0, 1, 2};
    auto find = [&](int i) {
        while (root[i] != i) i = root[i];
        return i;
    };
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k) {
            double g = std::abs(ev[i] - ev[k]) / s;
            out.min_gap = std::min(out.min_gap, g);
            if (g < cluster_tol) root[find(k)] = find(i);
        }

    for (int i = 0; i < 3; ++i) {
        if (find(i) != i) continue;
        EigenGroup g;
        cplx sum = 0;
        int n = 0;
        for (int k = 0; k < 3; ++k)
            if (find(k) == i) {
                sum += ev[k];
                ++n;
            }
        g.value = sum / double(n);
        g.algebraic = n;

        Mat3 B = A - g.value * Mat3::Identity();
        Eigen::JacobiSVD<Mat3> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
        auto sv = svd.singularValues();
        int small = 0;
        for (int k = 0; k < 3; ++k)
            if (sv(k) < 1e-7 * s) ++small;
        g.geometric = std::clamp(small, 1, n);
        for (int k = 3 - g.geometric; k < 3; ++k) {
            g.right.push_back(svd.matrixV().col(k));
            g.left.push_back(svd.matrixU().col(k).adjoint());
        }
        out.groups.push_back(std::move(g));
    }
    return out;
}

Surface11 surface_from_matrix(const Mat3& A) {
    double s = traceless_norm(A);
    if (!(s > 1e-9 * std::max(1.0, A.norm()))) throw ScalarMatrix();
    auto es = eigenstructure(A);
    Mat3 R = A - es.groups.front().value * Mat3::Identity();
    return {R / R.norm()};
}

EigenStructure eigenstructure(const Surface11& S, double cluster_tol) {
    return eigenstructure(S.A, cluster_tol);
}

bool contains(const Surface11& S, const FlagPoint& x, double tol) {
    cplx v = x.p.v.transpose() * S.A * x.l.v;
    return std::abs(v) < tol * x.p.v.norm() * S.A.norm() * x.l.v.norm();
}

bool same_surface(const Surface11& S1, const Surface11& S2, double tol) {
    Eigen::Matrix<cplx, 9, 2> M;
    Eigen::Matrix<cplx, 9, 1> t;
    Mat3 I = Mat3::Identity();
    for (int i = 0; i < 9; ++i) {
        M(i, 0) = S1.A(i / 3, i % 3);
        M(i, 1) = I(i / 3, i % 3);
        t(i) = S2.A(i / 3, i % 3);
    }
    Eigen::Vector2cd x = M.colPivHouseholderQr().solve(t);
    return (M * x - t).norm() < tol * t.norm() && std::abs(x(0)) > tol;
}

Surface11 transform_surface(const Mat3& B, const Surface11& S) {
    double n = B.norm();
    if (!(std::abs(B.determinant()) > 1e-12 * n * n * n)) throw SingularMatrix();
    return surface_from_matrix(B * S.A * B.inverse());
}

std::string to_string(ClassTag t) {
    switch (t) {
        case ClassTag::A1: return "A1";
        case ClassTag::A2: return "A2";
        case ClassTag::A3: return "A3";
        case ClassTag::A4: return "A4";
        case ClassTag::A5: return "A5";
    }
    return "?";
}

Mat3 canonical_matrix(ClassTag t, cplx lambda) {
    Mat3 A = Mat3::Zero();
    switch (t) {
        case ClassTag::A1: A(1, 1) = 1; A(2, 2) = lambda; break;
        case ClassTag::A2: A(2, 2) = 1; break;
        case ClassTag::A3: A(0, 1) = 1; A(2, 2) = 1; break;
        case ClassTag::A4: A(0, 1) = 1; break;
        case ClassTag::A5: A(0, 1) = 1; A(1, 2) = 1; break;
    }
    return A;
}

std::vector<cplx> cross_ratio_orbit(cplx l, double tol) {
    std::vector<cplx> all{l, 1.0 / l, 1.0 - l, 1.0 / (1.0 - l), l / (l - 1.0), (l - 1.0) / l};
    std::vector<cplx> out;
    for (cplx v : all) {
        bool dup = false;
        for (cplx w : out)
            if (std::abs(v - w) <= tol * std::max(1.0, std::abs(w))) dup = true;
        if (!dup) out.push_back(v);
    }
    return out;
}

cplx canonical_lambda(cplx l) {
    auto orb = cross_ratio_orbit(l);
    return *std::min_element(orb.begin(), orb.end(), key_less);
}

bool same_orbit(cplx l1, cplx l2, double tol) {
    for (cplx v : cross_ratio_orbit(l1))
        if (std::abs(v - l2) <= tol * std::max(1.0, std::abs(l2))) return true;
    return false;
}

CanonicalClass classify(const Mat3& A, double cluster_tol) {
    if (!(traceless_norm(A) > 1e-9 * std::max(1.0, A.norm()))) throw ScalarMatrix();
    auto es = eigenstructure(A, cluster_tol);
    const auto& G = es.groups;
    CanonicalClass out{ClassTag::A1, 0.0, Mat3::Identity(), es.min_gap};

    if (G.size() == 3) {
        std::array<int, 3> perm{0, 1, 2}, best{0, 1, 2};
        bool first = true;
        cplx bl = 0;
        do {
            cplx l = (G[perm[2]].value - G[perm[0]].value) / (G[perm[1]].value - G[perm[0]].value);
            if (first || key_less(l, bl)) {
                bl = l;
                best = perm;
                first = false;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.lambda = bl;
        for (int k = 0; k < 3; ++k) out.transform.col(k) = G[best[k]].right[0];
        return out;
    }

    if (G.size() == 2) {
        const EigenGroup& d = G[0].algebraic == 2 ? G[0] : G[1];
        const EigenGroup& s = G[0].algebraic == 2 ? G[1] : G[0];
        if (d.geometric == 2) {
            out.tag = ClassTag::A2;
            out.transform.col(0) = d.right[0];
            out.transform.col(1) = d.right[1];
        } else {
            out.tag = ClassTag::A3;
            Mat3 N = A - d.value * Mat3::Identity();
            Vec3 x1 = d.right[0];
            Vec3 x2 = N.completeOrthogonalDecomposition().solve((s.value - d.value) * x1);
            out.transform.col(0) = x1;
            out.transform.col(1) = x2;
        }
        out.transform.col(2) = s.right[0];
        return out;
    }

    const EigenGroup& g = G[0];
    Mat3 N = A - g.value * Mat3::Identity();
    if (g.geometric >= 2) {
        out.tag = ClassTag::A4;
        Eigen::JacobiSVD<Mat3> svd(N, Eigen::ComputeFullV);
        Vec3 x2 = svd.matrixV().col(0);
        Vec3 x1 = N * x2;
        // kernel vector independent of x1
        Vec3 k0 = g.right[0], k1 = g.right[1];
        Vec3 x3 = std::abs(x1.normalized().dot(k0)) < std::abs(x1.normalized().dot(k1)) ? k0 : k1;
        x3 -= x1.normalized() * x1.normalized().dot(x3);
        out.transform << x1, x2, x3.normalized();
    } else {
        out.tag = ClassTag::A5;
        Eigen::JacobiSVD<Mat3> svd(N * N, Eigen::ComputeFullV);
        Vec3 x3 = svd.matrixV().col(0);
        Vec3 x2 = N * x3;
        Vec3 x1 = N * x2;
        out.transform << x1, x2, x3;
    }
    return out;
}

CanonicalClass classify(const Surface11& S, double cluster_tol) { return classify(S.A, cluster_tol); }

SingularLocus singular_locus(const Surface11& S) {
    auto es = eigenstructure(S);
    const auto& G = es.groups;
    SingularLocus out;
    if (G.size() == 3) return out;
    const EigenGroup& d = G.size() == 2 ? (G[0].algebraic == 2 ? G[0] : G[1]) : G[0];
    out.eigenvalue = d.value;
    if (d.geometric == 1) {
        // p and l are the left and right eigenvectors; pl = 0 holds for a Jordan block
        out.kind = SingularLocus::Point;
        out.point = make_flag(unit_point(d.left[0]), unit_line(d.right[0]), 1e-6);
        return out;
    }
    out.kind = SingularLocus::Curve;
    if (G.size() == 2) {
        const EigenGroup& s = G[0].algebraic == 2 ? G[1] : G[0];
        out.curve = curve(unit_point(s.left[0]), unit_line(s.right[0]));
    } else {
        ProjVec q = cross(unit_line(d.right[0]), unit_line(d.right[1]));
        ProjVec m = cross(unit_point(d.left[0]), unit_point(d.left[1]));
        out.curve = curve(q, m, 1e-6);
    }
    return out;
}

double singular_system_residual(const Mat3& A, const FlagPoint& x, cplx mu) {
    Row3 p = x.p.v.transpose() / x.p.v.norm();
    Vec3 l = x.l.v / x.l.v.norm();
    double a = (p * A - mu * p).norm();
    double b = (A * l - mu * l).norm();
    double c = std::abs((p * l)(0));
    return std::max({a, b, c}) / std::max(1.0, A.norm());
}

bool is_j_invariant(const Surface11& S, double tol) {
    Surface11 H{S.A.adjoint()};
    return same_surface(S, H, tol);
}

std::array<ProjVec, 3> blowup_points(const Surface11& S) {
    auto es = eigenstructure(S);
    if (es.groups.size() != 3) throw NotSmooth();
    return {unit_point(es.groups[0].left[0]), unit_point(es.groups[1].left[0]),
            unit_point(es.groups[2].left[0])};
}

std::array<ProjVec, 3> blowup_lines(const Surface11& S) {
    auto es = eigenstructure(S);
    if (es.groups.size() != 3) throw NotSmooth();
    return {unit_line(es.groups[0].right[0]), unit_line(es.groups[1].right[0]),
            unit_line(es.groups[2].right[0])};
}

Mat3 UnitaryForm::triangular() const {
    Mat3 T;
    T << 0, a, b, 0, 1, c, 0, 0, lambda;
    return T;
}

UnitaryForm unitary_canonical_form(const Surface11& S) {
    auto es = eigenstructure(S);
    if (es.groups.size() != 3) throw NotSmooth();
    cplx m0 = es.groups[0].value, m1 = es.groups[1].value, m2 = es.groups[2].value;
    Mat3 A = (S.A - m0 * Mat3::Identity()) / (m1 - m0);
    cplx lambda = (m2 - m0) / (m1 - m0);

    Eigen::JacobiSVD<Mat3> s0(A, Eigen::ComputeFullV);
    Vec3 u1 = phase_fixed(s0.matrixV().col(2));

    Eigen::Matrix<cplx, 1, 3> u1h = u1.adjoint();
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 1, 3>> s1(u1h, Eigen::ComputeFullV);
    Eigen::Matrix<cplx, 3, 2> Q = s1.matrixV().rightCols<2>();
    Eigen::Matrix2cd B = Q.adjoint() * A * Q - Eigen::Matrix2cd::Identity();
    Eigen::Vector2cd v = B.row(0).norm() >= B.row(1).norm() ? Eigen::Vector2cd(-B(0, 1), B(0, 0))
                                                             : Eigen::Vector2cd(-B(1, 1), B(1, 0));
    Vec3 u2 = phase_fixed(Q * v);
    Vec3 u3 = phase_fixed(Vec3(u1(1) * u2(2) - u1(2) * u2(1), u1(2) * u2(0) - u1(0) * u2(2),
                               u1(0) * u2(1) - u1(1) * u2(0))
                              .conjugate());

    UnitaryForm f;
    f.U << u1, u2, u3;
    Mat3 T = f.U.adjoint() * A * f.U;
    f.lambda = lambda;
    f.a = T(0, 1);
    f.b = T(0, 2);
    f.c = T(1, 2);
    return f;
}

bool unitary_equivalent(const UnitaryForm& f, const UnitaryForm& g, double tol) {
    double sc = std::max({1.0, std::abs(f.a), std::abs(f.b), std::abs(f.c), std::abs(g.a),
                          std::abs(g.b), std::abs(g.c)});
    if (std::abs(f.lambda - g.lambda) > tol * std::max(1.0, std::abs(f.lambda))) return false;
    if (std::abs(std::abs(f.a) - std::abs(g.a)) > tol * sc) return false;
    if (std::abs(std::abs(f.b) - std::abs(g.b)) > tol * sc) return false;
    if (std::abs(std::abs(f.c) - std::abs(g.c)) > tol * sc) return false;
    return std::abs(f.a * g.b * f.c - g.a * f.b * g.c) <= tol * sc * sc * sc;
}

bool unitary_equivalent(const Surface11& S1, const Surface11& S2, double tol) {
    return unitary_equivalent(unitary_canonical_form(S1), unitary_canonical_form(S2), tol);
}

int Form::degree() const {
    if (terms.empty()) return 0;
    const auto& e = terms.front().e;
    return e[0] + e[1] + e[2];
}

cplx Form::operator()(const Vec3& l) const {
    cplx s = 0;
    for (const auto& t : terms) {
        cplx m = t.coeff;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < t.e[i]; ++k) m *= l(i);
        s += m;
    }
    return s;
}

Mat3 Form::quadratic_matrix() const {
    Mat3 Q = Mat3::Zero();
    for (const auto& t : terms) {
        if (t.e[0] + t.e[1] + t.e[2] != 2) throw Error("quadratic_matrix needs a degree-2 form");
        int i = -1, k = -1;
        for (int a = 0; a < 3; ++a)
            for (int n = 0; n < t.e[a]; ++n) (i < 0 ? i : k) = a;
        if (i == k) {
            Q(i, i) += t.coeff;
        } else {
            Q(i, k) += t.coeff / 2.0;
            Q(k, i) += t.coeff / 2.0;
        }
    }
    return Q;
}

Form monomial(int e0, int e1, int e2, cplx coeff) { return Form{{{{e0, e1, e2}, coeff}}}; }

Form operator+(Form f, const Form& g) {
    f.terms.insert(f.terms.end(), g.terms.begin(), g.terms.end());
    return f;
}

bool base_points_1d(const Forms3& B, const ProjVec& l0, double tol) {
    Vec3 l = normalize(l0).v;
    Vec3 b(B[0](l), B[1](l), B[2](l));
    double nb = b.norm();
    if (nb < tol) return true;
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k)
            if (std::abs(b(i) * l(k) - b(k) * l(i)) > tol * nb) return false;
    return true;
}

BranchValue branch_quartic_12_scaled(const Forms3& B, const ProjVec& pin, int chart) {
    for (const auto& f : B)
        if (f.degree() != 2) throw Error("branch_quartic_12 needs degree-2 forms");
    Vec3 p = normalize(pin).v;
    Mat3 G = p(0) * B[0].quadratic_matrix() + p(1) * B[1].quadratic_matrix() + p(2) * B[2].quadratic_matrix();

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int x, int y) { return std::abs(p(x)) > std::abs(p(y)); });
    for (int k : order) {
        if (chart >= 0 && k != chart) continue;
        if (std::abs(p(k)) < kZeroTol) continue;
        int o0 = k == 0 ? 1 : 0;
        int o1 = k == 2 ? 1 : 2;
        Eigen::Matrix<cplx, 3, 2> M = Eigen::Matrix<cplx, 3, 2>::Zero();
        M(k, 0) = -p(o0);
        M(k, 1) = -p(o1);
        M(o0, 0) = p(k);
        M(o1, 1) = p(k);
        Eigen::Matrix2cd H = M.transpose() * G * M;
        double hn = H.norm();
        if (hn < 1e-14) continue;
        cplx pk2 = p(k) * p(k);
        return {(H(0, 1) * H(0, 1) - H(0, 0) * H(1, 1)) / pk2, hn * hn / std::norm(p(k))};
    }
    throw DegenerateChart();
}

cplx branch_quartic_12(const Forms3& B, const ProjVec& p) { return branch_quartic_12_scaled(B, p).value; }

}  // namespace tw
