#include "twistor/sampling.hpp"

#include <cmath>

#include "twistor/proj.hpp"

namespace tw {

Mat3 random_unitary(std::mt19937_64& rng) {
    Mat3 G;
    for (int k = 0; k < 3; ++k) G.col(k) = gaussian_vec3(rng);
    Eigen::HouseholderQR<Mat3> qr(G);
    Mat3 Q = qr.householderQ();
    Mat3 R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < 3; ++k) {
        cplx d = R(k, k);
        if (std::abs(d) > 0) Q.col(k) *= d / std::abs(d);
    }
    return Q;
}

Mat3 random_invertible(std::mt19937_64& rng, double max_cond) {
    for (;;) {
        Mat3 G;
        for (int k = 0; k < 3; ++k) G.col(k) = gaussian_vec3(rng);
        Eigen::JacobiSVD<Mat3> svd(G);
        auto s = svd.singularValues();
        if (s(2) > 0 && s(0) / s(2) < max_cond) return G;
    }
}

cplx random_cplx(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double rad = r * std::sqrt(U(rng));
    double th = 2 * M_PI * U(rng);
    return std::polar(rad, th);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 of master + golden-ratio stride
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace tw
