#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tw {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

inline constexpr double kZeroTol = 1e-12;
inline constexpr double kProjTol = 1e-9;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define TW_ERROR(Name)                                   \
    struct Name : Error {                                \
        explicit Name(const std::string& what = #Name)   \
            : Error(what) {}                             \
    }

TW_ERROR(ZeroVector);
TW_ERROR(FlavorMismatch);
TW_ERROR(DegenerateCross);
TW_ERROR(NotIncident);
TW_ERROR(SingularMatrix);
TW_ERROR(DegenerateParameter);
TW_ERROR(IdenticalCurves);
TW_ERROR(ScalarMatrix);
TW_ERROR(NotSmooth);
TW_ERROR(DegenerateChart);
TW_ERROR(ReducibleCurve);
TW_ERROR(NonPositiveBidegree);
TW_ERROR(Overflow);

#undef TW_ERROR

// Cross matrix: K(v) x = v × x for column x.
inline Mat3 cross_matrix(const Vec3& v) {
    Mat3 k;
    k << 0, -v(2), v(1),
         v(2), 0, -v(0),
         -v(1), v(0), 0;
    return k;
}

}  // namespace tw
