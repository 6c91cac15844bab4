#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twistor/curves.hpp"

namespace tw {

// pi(L_{q,m}) = {z : z Phi z^* = 0}, Phi = (qm) I - m q.
struct ImageQuadric {
    Mat3 Phi;
    ProjVec q, m;
    cplx eval(const Vec3& z) const;  // z Phi z^*
};

ImageQuadric image_quadric(const Curve11& c);

// Unitary U with q U^* ~ e0 and U m ~ (1, 2 rho, 0).
struct SphereNormalForm {
    double rho;
    Mat3 U;
};

SphereNormalForm sphere_normal_form(const Curve11& c);

struct FundamentalForm {
    double E, F, G;
};

FundamentalForm first_fundamental_form(double rho, double u, double v);

struct ProfileSample {
    double v, f, g;
};

struct ProfileCurve {
    double rho;
    std::vector<ProfileSample> samples;
    int clamp_events = 0;  // integrand evaluations where the radicand went negative
};

double profile_f(double rho, double v);
double profile_fprime(double rho, double v);
ProfileCurve profile_curve(double rho, int n, double tol = 1e-8);

struct TorusRow {
    double x;
    std::optional<double> s_outer, s_inner;
};

struct TorusProfile {
    double a;
    double lambda;
    std::vector<TorusRow> rows;
    std::vector<double> singular_x;  // x with s = 0
    int singular_count = 0;
    // coefficients of s^4 + B s^2 + C at x
    std::array<double, 3> quartic(double x) const;
};

// Branch locus of the triangular form (lambda, a, 0, 0) on the slice q = (1, x, s e^{it}).
TorusProfile torus_profile(double a, double lambda = 2.0, int nodes = 2048);

std::array<double, 3> moment_map(const ProjVec& q);

}  // namespace tw
