#include "twistor/curves.hpp"

namespace tw {

Curve11 curve(const ProjVec& q, const ProjVec& m, double tol) {
    if (q.flavor != Flavor::Point || m.flavor != Flavor::Line) throw FlavorMismatch();
    ProjVec nq = normalize(q);
    ProjVec nm = normalize(m);
    return {nq, nm, incidence(nq, nm) < tol ? Curve11::Reducible : Curve11::Smooth};
}

bool contains(const Curve11& c, const FlagPoint& x, double tol) {
    bool ql = incidence(c.q, x.l) < tol;
    bool pm = incidence(x.p, c.m) < tol;
    if (c.kind == Curve11::Smooth) return ql && pm;
    // union of the two fibers
    return (proj_eq(x.p, c.q, tol)) || (proj_eq(x.l, c.m, tol));
}

FlagPoint param(const Curve11& c, cplx t) {
    if (c.kind != Curve11::Smooth) throw DegenerateParameter("reducible curve has no (1,1) parametrization");
    auto [a, b] = pencil_basis(c.q);
    ProjVec l = normalize(line(a.v + t * b.v));
    return make_flag(cross(l, c.m), l);
}

FlagPoint param_at_infinity(const Curve11& c) {
    if (c.kind != Curve11::Smooth) throw DegenerateParameter("reducible curve has no (1,1) parametrization");
    auto [a, b] = pencil_basis(c.q);
    return make_flag(cross(b, c.m), b);
}

namespace {

void add_unique(std::vector<FlagPoint>& pts, const FlagPoint& x, double tol) {
    for (const auto& y : pts)
        if (flag_eq(x, y, tol)) return;
    pts.push_back(x);
}

// Smooth L_{q,m} against pi1^{-1}(q2): needs q2 on m, meets at (q2, q × q2).
void smooth_vs_pi1(const Curve11& c, const ProjVec& q2, std::vector<FlagPoint>& pts, double tol) {
    if (incidence(q2, c.m) < tol) add_unique(pts, make_flag(q2, cross(c.q, q2)), tol);
}

// Smooth L_{q,m} against pi2^{-1}(m2): needs q on m2, meets at (m × m2, m2).
void smooth_vs_pi2(const Curve11& c, const ProjVec& m2, std::vector<FlagPoint>& pts, double tol) {
    if (incidence(c.q, m2) < tol) add_unique(pts, make_flag(cross(c.m, m2), m2), tol);
}

Intersection finish(std::vector<FlagPoint> pts) {
    Intersection r{Intersection::Empty, std::move(pts)};
    if (r.points.size() == 1) r.kind = Intersection::OnePoint;
    if (r.points.size() >= 2) r.kind = Intersection::TwoPoints;
    return r;
}

}  // namespace

Intersection intersect(const Curve11& c1, const Curve11& c2, double tol) {
    bool sq = proj_eq(c1.q, c2.q, tol);
    bool sm = proj_eq(c1.m, c2.m, tol);
    if (sq && sm) throw IdenticalCurves();
    std::vector<FlagPoint> pts;

    if (c1.kind == Curve11::Smooth && c2.kind == Curve11::Smooth) {
        if (sq) {
            ProjVec p = cross(c1.m, c2.m);
            pts.push_back(make_flag(p, cross(c1.q, p)));
        } else if (sm) {
            ProjVec l = cross(c1.q, c2.q);
            pts.push_back(make_flag(cross(l, c1.m), l));
        } else {
            ProjVec p = cross(c1.m, c2.m);
            ProjVec l = cross(c1.q, c2.q);
            if (incidence(p, l) < tol) pts.push_back(make_flag(p, l));
        }
        return finish(std::move(pts));
    }

    if (c1.kind == Curve11::Reducible && c2.kind == Curve11::Reducible) {
        // a shared fiber component is detected from the base points alone
        if (sq || sm) return {Intersection::SharedComponent, {}};
        if (incidence(c1.q, c2.m) < tol) add_unique(pts, make_flag(c1.q, c2.m), tol);
        if (incidence(c2.q, c1.m) < tol) add_unique(pts, make_flag(c2.q, c1.m), tol);
        return finish(std::move(pts));
    }

    const Curve11& s = c1.kind == Curve11::Smooth ? c1 : c2;
    const Curve11& r = c1.kind == Curve11::Smooth ? c2 : c1;
    smooth_vs_pi1(s, r.q, pts, tol);
    smooth_vs_pi2(s, r.m, pts, tol);
    return finish(std::move(pts));
}

bool is_twistor_fiber(const Curve11& c, double tol) { return proj_eq(c.m, star(c.q), tol); }

Curve11 twistor_fiber(const ProjVec& q) { return curve(q, star(q)); }

}  // namespace tw
