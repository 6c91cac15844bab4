#pragma once

#include <vector>

#include "twistor/flag.hpp"

namespace tw {

// L_{q,m} = {(p,l) : pl = 0, ql = 0, pm = 0}.
struct Curve11 {
    ProjVec q;  // Point
    ProjVec m;  // Line
    enum Kind { Smooth, Reducible } kind;
};

Curve11 curve(const ProjVec& q, const ProjVec& m, double tol = kProjTol);
bool contains(const Curve11& c, const FlagPoint& x, double tol = kProjTol);

// Sweeps l through the pencil of lines through q and sets p = l × m.
FlagPoint param(const Curve11& c, cplx t);
FlagPoint param_at_infinity(const Curve11& c);

struct Intersection {
    enum Kind { Empty, OnePoint, TwoPoints, SharedComponent } kind;
    std::vector<FlagPoint> points;
};

Intersection intersect(const Curve11& c1, const Curve11& c2, double tol = kProjTol);

bool is_twistor_fiber(const Curve11& c, double tol = kProjTol);
Curve11 twistor_fiber(const ProjVec& q);

}  // namespace tw
