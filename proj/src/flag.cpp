#include "twistor/flag.hpp"

#include <algorithm>
#include <array>

namespace tw {

FlagPoint make_flag(const ProjVec& p, const ProjVec& l, double tol) {
    if (p.flavor != Flavor::Point || l.flavor != Flavor::Line) throw FlavorMismatch();
    ProjVec np = normalize(p);
    ProjVec nl = normalize(l);
    double r = incidence(np, nl);
    if (r >= tol) throw NotIncident();
    if (r > kZeroTol) {
        cplx pl = pair(np, nl);
        nl = normalize(line(nl.v - pl * np.v.conjugate()));
    }
    return {np, nl};
}

FlagPoint random_flag(std::mt19937_64& rng) {
    ProjVec p = random_projvec(rng, Flavor::Point);
    ProjVec other = random_projvec(rng, Flavor::Point);
    return make_flag(p, cross(p, other));
}

ProjVec twistor_projection(const FlagPoint& x) { return cross(star(x.p), x.l); }
ProjVec pi1(const FlagPoint& x) { return x.p; }
ProjVec pi2(const FlagPoint& x) { return x.l; }
ProjVec pi2_star(const FlagPoint& x) { return normalize(star(x.l)); }

FlagPoint j1(const FlagPoint& x) { return make_flag(x.p, cross(x.p, star(x.l))); }
FlagPoint j(const FlagPoint& x) { return make_flag(star(x.l), star(x.p)); }
FlagPoint j2(const FlagPoint& x) { return make_flag(cross(star(x.p), x.l), x.l); }
FlagPoint kappa(const FlagPoint& x) {
    return make_flag(point(x.l.v), line(x.p.v));
}

FlagPoint act(const Mat3& B, const FlagPoint& x) {
    double n = B.norm();
    if (!(std::abs(B.determinant()) > 1e-12 * n * n * n)) throw SingularMatrix();
    Mat3 Bi = B.inverse();
    Vec3 p = (x.p.v.transpose() * Bi).transpose();
    Vec3 l = B * x.l.v;
    return make_flag(point(p), line(l));
}

bool flag_eq(const FlagPoint& a, const FlagPoint& b, double tol) {
    return proj_eq(a.p, b.p, tol) && proj_eq(a.l, b.l, tol);
}

std::pair<ProjVec, ProjVec> pencil_basis(const ProjVec& q) {
    std::array<ProjVec, 3> c;
    std::array<double, 3> n{};
    Vec3 u = q.v / q.v.norm();
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e(i) = 1;
        Vec3 w(u(1) * e(2) - u(2) * e(1), u(2) * e(0) - u(0) * e(2), u(0) * e(1) - u(1) * e(0));
        n[i] = w.norm();
        c[i] = {w, flip(q.flavor)};
    }
    int drop = static_cast<int>(std::min_element(n.begin(), n.end()) - n.begin());
    int i = drop == 0 ? 1 : 0;
    int k = drop == 2 ? 1 : 2;
    return {normalize(c[i]), normalize(c[k])};
}

FiberCurve fiber_pi1(const ProjVec& q) { return {FiberCurve::Pi1, normalize(q)}; }
FiberCurve fiber_pi2(const ProjVec& m) { return {FiberCurve::Pi2, normalize(m)}; }

FlagPoint FiberCurve::sample(cplx t) const {
    auto [a, b] = pencil_basis(base);
    ProjVec v{a.v + t * b.v, a.flavor};
    return kind == Pi1 ? make_flag(base, v) : make_flag(v, base);
}

FlagPoint FiberCurve::sample_at_infinity() const {
    auto [a, b] = pencil_basis(base);
    return kind == Pi1 ? make_flag(base, b) : make_flag(b, base);
}

bool FiberCurve::contains(const FlagPoint& x, double tol) const {
    if (kind == Pi1) return proj_eq(x.p, base, tol);
    return proj_eq(x.l, base, tol);
}

bool fibers_meet(const ProjVec& q, const ProjVec& m, double tol) {
    return incidence(q, m) < tol;
}

}  // namespace tw
