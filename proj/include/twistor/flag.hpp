#pragma once

#include "twistor/proj.hpp"

namespace tw {

struct FlagPoint {
    ProjVec p;  // Point
    ProjVec l;  // Line
};

// Validates pl = 0. Small drift in (1e-12, tol) is projected away.
FlagPoint make_flag(const ProjVec& p, const ProjVec& l, double tol = kProjTol);
FlagPoint random_flag(std::mt19937_64& rng);

ProjVec twistor_projection(const FlagPoint& x);
ProjVec pi1(const FlagPoint& x);
ProjVec pi2(const FlagPoint& x);
// pi2*(x) = star(l), the point conjugate to the line.
ProjVec pi2_star(const FlagPoint& x);

FlagPoint j1(const FlagPoint& x);
FlagPoint j(const FlagPoint& x);
FlagPoint j2(const FlagPoint& x);
FlagPoint kappa(const FlagPoint& x);

// (pB^{-1}, Bl)
FlagPoint act(const Mat3& B, const FlagPoint& x);

bool flag_eq(const FlagPoint& a, const FlagPoint& b, double tol = kProjTol);

// Two independent lines through the point q (or two points on the line q).
std::pair<ProjVec, ProjVec> pencil_basis(const ProjVec& q);

// pi1^{-1}(q) or pi2^{-1}(m), parametrized by the projective t-line.
struct FiberCurve {
    enum Kind { Pi1, Pi2 } kind;
    ProjVec base;
    FlagPoint sample(cplx t) const;
    FlagPoint sample_at_infinity() const;
    bool contains(const FlagPoint& x, double tol = kProjTol) const;
};

FiberCurve fiber_pi1(const ProjVec& q);
FiberCurve fiber_pi2(const ProjVec& m);
bool fibers_meet(const ProjVec& q, const ProjVec& m, double tol = kProjTol);

}  // namespace tw
