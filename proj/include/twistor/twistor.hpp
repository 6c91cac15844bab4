#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistor/surfaces.hpp"

namespace tw {

// Symmetric C with p C p^T = det(p | pA | q).
struct ConicMatrix {
    Mat3 C;
    ProjVec q;
};

ConicMatrix conic_matrix(const Mat3& A, const ProjVec& q);
ConicMatrix conic_matrix(const Surface11& S, const ProjVec& q);

struct FiberPreimages {
    bool whole_fiber = false;
    std::vector<FlagPoint> points;  // 0..2, empty when whole_fiber
};

FiberPreimages fiber_preimages(const Surface11& S, const ProjVec& q);

// Solutions of |z|^2 + e z + f = 0, e != 0.
std::vector<cplx> solve_norm_quadratic(cplx e, cplx f, double tol = 1e-12);

struct FiberSet {
    enum Kind { Empty, One, Two, Circle } kind = Empty;
    std::vector<ProjVec> points;
    // Circle: q = (1, 0, sqrt(lambda-1) e^{it}) · frame
    double circle_lambda = 0;
    Mat3 frame = Mat3::Identity();
    std::string condition;  // "i".."ix", "circle", "singular", or "none"
    bool boundary = false;
    std::vector<std::string> warnings;

    ProjVec circle_point(double theta) const;
};

std::string to_string(FiberSet::Kind k);

FiberSet twistor_fibers_in(const Surface11& S);

// Which of the conditions (i)..(ix) holds for the triangular form (lambda,a,b,c).
struct FiberCondition {
    std::string label;  // "" if none
    int count = 0;
    bool boundary = false;
};
FiberCondition fiber_condition(cplx lambda, cplx a, cplx b, cplx c, double tol = 1e-9);
// Normalized residuals of the single-fiber equations (i), (ii), (iii); infinite where a required entry vanishes.
std::array<double, 3> fiber_condition_residuals(cplx lambda, cplx a, cplx b, cplx c, double tol = 1e-9);

// Points q whose whole twistor fiber lies in S_A, from the eigen-kernels of A.
std::vector<ProjVec> d0_candidates(const Mat3& A, std::vector<std::string>* warnings = nullptr);
// q is in D0 iff W A W^* is scalar for W an orthonormal basis of the points orthogonal to q.
double d0_residual(const Mat3& A, const ProjVec& q);
// max over n samples of the fiber over q of the relative |pAl|
double fiber_containment_residual(const Mat3& A, const ProjVec& q, int n = 20);

struct BranchSample {
    ProjVec q;
    cplx R;          // branch polynomial of S_A (pAl convention)
    cplx R_printed;  // the printed two-brace expression evaluated at q
    double scale;    // sum of moduli of all monomials of R at q
    std::optional<std::array<cplx, 4>> factors;  // R--, R+-, R-+, R++
};

// (lambda,a,b,c) is the triangular form; q is in the same frame.
BranchSample branch_R(const UnitaryForm& f, const ProjVec& q);
// q in the coordinates of S; evaluated in its unitary frame.
BranchSample branch_R(const Surface11& S, const ProjVec& q);

cplx branch_R_printed(cplx lambda, cplx a, cplx b, cplx c, const Vec3& q);

struct RankDrop {
    Eigen::Matrix<cplx, 4, 3> M;
    int rank = 3;
    std::array<cplx, 4> minors;  // det with row i deleted
    ProjVec q_frame;
    double scale = 1;  // norm scale used for the rank threshold
};

// Tangency system [K(conj q) C ; conj q] built in the unitary frame of S.
RankDrop rank_drop_system(const Surface11& S, const ProjVec& q);
RankDrop rank_drop_system(const UnitaryForm& f, const ProjVec& q_frame);

// det [p ; pA ; pA^*], vanishing on pi1(S ∩ j(S)).
cplx conjugate_intersection_det(const Mat3& A, const ProjVec& p);

struct BranchZero {
    ProjVec q;
    double residual;  // |R| / scale
};

// Multistart Gauss-Newton on the chart q0 = 1 minimizing |R|^2.
std::vector<BranchZero> find_branch_zeros(const UnitaryForm& f, int starts, std::uint64_t seed,
                                          double accept = 1e-10);

}  // namespace tw
