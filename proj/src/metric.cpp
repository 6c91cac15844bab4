#include "twistor/metric.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace tw {

cplx ImageQuadric::eval(const Vec3& z) const { return (z.transpose() * Phi * z.conjugate())(0); }

ImageQuadric image_quadric(const Curve11& c) {
    if (c.kind != Curve11::Smooth) throw ReducibleCurve();
    cplx qm = pair(c.q, c.m);
    Mat3 Phi = qm * Mat3::Identity() - c.m.v * c.q.v.transpose();
    return {Phi, c.q, c.m};
}

SphereNormalForm sphere_normal_form(const Curve11& c) {
    if (c.kind != Curve11::Smooth) throw ReducibleCurve();
    Vec3 q = c.q.v / c.q.v.norm();
    Vec3 m = c.m.v / c.m.v.norm();
    auto crs = [](const Vec3& x, const Vec3& y) {
        return Vec3(x(1) * y(2) - x(2) * y(1), x(2) * y(0) - x(0) * y(2), x(0) * y(1) - x(1) * y(0));
    };
    // row 2 kills both q (hermitian) and m (bilinear)
    Vec3 r2 = crs(q.conjugate(), m);
    if (r2.norm() < 1e-12) {
        auto W = pencil_basis(normalize(line(q.conjugate())));
        r2 = W.first.v;
    }
    r2.normalize();
    Vec3 r1 = crs(q.conjugate(), r2.conjugate()).normalized();
    Mat3 U;
    U.row(0) = q.transpose();
    U.row(1) = r1.transpose();
    U.row(2) = r2.transpose();
    Vec3 mm = U * m;
    for (int k = 0; k < 2; ++k)
        if (std::abs(mm(k)) > 0) U.row(k) *= std::conj(mm(k)) / std::abs(mm(k));
    mm = U * m;
    return {std::abs(mm(1)) / (2 * std::abs(mm(0))), U};
}

FundamentalForm first_fundamental_form(double rho, double, double v) {
    double r2 = rho * rho;
    double c = std::cos(v), s = std::sin(v);
    double E = r2 * c * c * (1 + r2 * s * s) / ((1 + r2) * (1 + r2));
    return {E, 0.0, r2 / (1 + r2)};
}

double profile_f(double rho, double v) {
    double r2 = rho * rho;
    double s = std::sin(v);
    return rho * std::cos(v) * std::sqrt(1 + r2 * s * s) / (1 + r2);
}

double profile_fprime(double rho, double v) {
    double r2 = rho * rho;
    double s = std::sin(v);
    return rho * s * (r2 * std::cos(2 * v) - 1) / ((1 + r2) * std::sqrt(1 + r2 * s * s));
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

ProfileCurve profile_curve(double rho, int n, double tol) {
    if (!(rho > 0)) throw Error("rho must be positive");
    if (n < 16) throw Error("profile_curve needs at least 16 samples");
    ProfileCurve pc;
    pc.rho = rho;
    double G = rho * rho / (1 + rho * rho);
    auto integrand = [&](double t) {
        double fp = profile_fprime(rho, t);
        double r = G - fp * fp;
        if (r < 0) {
            ++pc.clamp_events;
            return 0.0;
        }
        return std::sqrt(r);
    };
    const double h = std::numbers::pi / 2;
    std::vector<double> vs(n);
    for (int k = 0; k < n; ++k) vs[k] = -h + std::numbers::pi * k / (n - 1);
    vs.front() = -h;
    vs.back() = h;

    std::vector<double> g(n, 0.0);
    double seg_tol = tol / n;
    int mid = 0;
    while (mid < n && vs[mid] < 0) ++mid;  // first node with v >= 0
    double prev = 0, acc = 0;
    for (int k = mid; k < n; ++k) {
        acc += integrate(integrand, prev, vs[k], seg_tol);
        prev = vs[k];
        g[k] = acc;
    }
    prev = 0;
    acc = 0;
    for (int k = mid - 1; k >= 0; --k) {
        acc -= integrate(integrand, vs[k], prev, seg_tol);
        prev = vs[k];
        g[k] = acc;
    }
    for (int k = 0; k < n; ++k) {
        double f = (k == 0 || k == n - 1) ? 0.0 : std::max(0.0, profile_f(rho, vs[k]));
        pc.samples.push_back({vs[k], f, g[k]});
    }
    return pc;
}

std::array<double, 3> TorusProfile::quartic(double x) const {
    double l = lambda;
    double t = (l - 1) + l * x * x + a * x;
    return {1.0, 2 * t - 4 * (l - 1) * (1 - a * x), t * t};
}

TorusProfile torus_profile(double a, double lambda, int nodes) {
    if (a == 0) throw Error("torus_profile needs a != 0");
    TorusProfile tp{a, lambda, {}, {}, 0};
    double lo = -(std::abs(a) + 3), hi = 3;
    if (a < 0) {
        lo = -3;
        hi = std::abs(a) + 3;
    }
    for (int k = 0; k < nodes; ++k) {
        double x = lo + (hi - lo) * k / (nodes - 1);
        auto [one, B, C] = tp.quartic(x);
        TorusRow row{x, std::nullopt, std::nullopt};
        double disc = B * B - 4 * C;
        if (disc >= -1e-12) {
            double r = std::sqrt(std::max(0.0, disc));
            double S1 = (-B + r) / 2, S2 = (-B - r) / 2;
            if (S1 >= -1e-12) row.s_outer = std::sqrt(std::max(0.0, S1));
            if (S2 >= -1e-12 && r > 0) row.s_inner = std::sqrt(std::max(0.0, S2));
        }
        tp.rows.push_back(row);
    }
    // s = 0 exactly where lambda x^2 + a x + (lambda - 1) = 0
    double d = a * a - 4 * lambda * (lambda - 1);
    double scale = std::max(a * a, 4 * std::abs(lambda * (lambda - 1)));
    if (std::abs(d) <= 1e-9 * scale) {
        tp.singular_x = {-a / (2 * lambda)};
    } else if (d > 0) {
        double r = std::sqrt(d);
        tp.singular_x = {(-a - r) / (2 * lambda), (-a + r) / (2 * lambda)};
    }
    tp.singular_count = int(tp.singular_x.size());
    return tp;
}

std::array<double, 3> moment_map(const ProjVec& q) {
    double n = q.v.squaredNorm();
    if (!(n > 0)) throw ZeroVector();
    return {std::norm(q.v(0)) / n, std::norm(q.v(1)) / n, std::norm(q.v(2)) / n};
}

}  // namespace tw
