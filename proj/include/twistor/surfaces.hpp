#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twistor/curves.hpp"

namespace tw {

using Row3 = Eigen::RowVector3cd;

// S_A = {(p,l) : pAl = 0}; A is stored as a normalized pencil representative.
struct Surface11 {
    Mat3 A;
};

// Relative threshold for merging eigenvalues into one multiplicity group.
inline constexpr double kClusterTol = 1e-4;

Surface11 surface_from_matrix(const Mat3& A);
bool contains(const Surface11& S, const FlagPoint& x, double tol = kProjTol);
// True iff the two matrices span the same Kronecker pencil.
bool same_surface(const Surface11& S1, const Surface11& S2, double tol = 1e-9);
// S_{B A B^-1} = B·S_A under act.
Surface11 transform_surface(const Mat3& B, const Surface11& S);

// Eigenvalues sorted by (Re, Im) ascending with a relative tie band.
std::array<cplx, 3> sorted_eigenvalues(const Mat3& A);

struct EigenGroup {
    cplx value;
    int algebraic = 1;
    int geometric = 1;
    std::vector<Row3> left;
    std::vector<Vec3> right;
    bool defective() const { return geometric < algebraic; }
};

struct EigenStructure {
    std::vector<EigenGroup> groups;  // in sorted eigenvalue order
    double min_gap = 0;              // smallest raw eigenvalue gap, relative
};

EigenStructure eigenstructure(const Mat3& A, double cluster_tol = kClusterTol);
EigenStructure eigenstructure(const Surface11& S, double cluster_tol = kClusterTol);

enum class ClassTag { A1, A2, A3, A4, A5 };
std::string to_string(ClassTag t);
Mat3 canonical_matrix(ClassTag t, cplx lambda = 2.0);

struct CanonicalClass {
    ClassTag tag;
    cplx lambda;  // meaningful for A1 only
    // X with X^{-1} A X = alpha·A_tag + beta·I
    Mat3 transform;
    double min_gap = 0;
};

CanonicalClass classify(const Mat3& A, double cluster_tol = kClusterTol);
CanonicalClass classify(const Surface11& S, double cluster_tol = kClusterTol);

std::vector<cplx> cross_ratio_orbit(cplx lambda, double tol = 1e-12);
// Orbit element with lexicographically smallest (|l - 1/2|, Re l, Im l).
cplx canonical_lambda(cplx lambda);
bool same_orbit(cplx l1, cplx l2, double tol = 1e-7);

struct SingularLocus {
    enum Kind { Smooth, Point, Curve } kind = Smooth;
    std::optional<FlagPoint> point;
    std::optional<Curve11> curve;  // Smooth L_{q,m} (A2) or reducible fiber pair (A4)
    cplx eigenvalue = 0;
};

SingularLocus singular_locus(const Surface11& S);
// max of |pA - mu p|, |A l - mu l|, |pl| over unit representatives
double singular_system_residual(const Mat3& A, const FlagPoint& x, cplx mu);

bool is_j_invariant(const Surface11& S, double tol = 1e-9);

std::array<ProjVec, 3> blowup_points(const Surface11& S);
std::array<ProjVec, 3> blowup_lines(const Surface11& S);

// A' = U^* (A - mu1)/(mu2 - mu1) U = [[0,a,b],[0,1,c],[0,0,lambda]]
struct UnitaryForm {
    cplx lambda, a, b, c;
    Mat3 U;
    Mat3 triangular() const;
};

UnitaryForm unitary_canonical_form(const Surface11& S);
bool unitary_equivalent(const UnitaryForm& f1, const UnitaryForm& f2, double tol = 1e-8);
bool unitary_equivalent(const Surface11& S1, const Surface11& S2, double tol = 1e-8);

// Homogeneous polynomial in l: sum of coeff · l0^e0 l1^e1 l2^e2.
struct Form {
    struct Term {
        std::array<int, 3> e;
        cplx coeff;
    };
    std::vector<Term> terms;
    int degree() const;
    cplx operator()(const Vec3& l) const;
    // Symmetric Q with l^T Q l = form(l); degree 2 only.
    Mat3 quadratic_matrix() const;
};

Form monomial(int e0, int e1, int e2, cplx coeff = 1.0);
Form operator+(Form f, const Form& g);

// The surface p0 B0(l) + p1 B1(l) + p2 B2(l) = 0 in F.
using Forms3 = std::array<Form, 3>;

bool base_points_1d(const Forms3& B, const ProjVec& l0, double tol = 1e-9);

struct BranchValue {
    cplx value;
    double scale;  // magnitude of the reduced binary form, squared
};

// Discriminant/4 of the binary quadratic obtained by eliminating l_k (k the largest |p_k|),
// divided by p_k^2; this is chart independent up to roundoff.
cplx branch_quartic_12(const Forms3& B, const ProjVec& p);
BranchValue branch_quartic_12_scaled(const Forms3& B, const ProjVec& p, int chart = -1);

}  // namespace tw
