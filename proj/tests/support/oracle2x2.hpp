#pragma once

// Brute-force 2x2 Hermitian eigendecomposition by the quadratic formula.
// Test-only: deliberately independent of the library's eigensolver path so it
// can serve as an oracle for derived expected values.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using C = std::complex<double>;

struct Eig2 {
    double lambda[2];         // ascending
    Eigen::Vector2cd vec[2];  // unit eigenvectors
};

inline Eig2 eig2x2_hermitian(const Mat& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const C b = h(0, 1);
    Eig2 out;
    const double mean = 0.5 * (a + d);
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    out.lambda[0] = mean - disc;
    out.lambda[1] = mean + disc;
    if (std::abs(b) == 0.0) {
        const bool ascending = a <= d;
        out.vec[0] = ascending ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
        out.vec[1] = ascending ? Eigen::Vector2cd(0, 1) : Eigen::Vector2cd(1, 0);
        return out;
    }
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2cd v(b, C(out.lambda[k] - a, 0.0));
        out.vec[k] = v / v.norm();
    }
    return out;
}

// Positive square root of a 2x2 Hermitian PSD matrix via the oracle
// eigendecomposition; tiny negative eigenvalues are clamped.
inline Mat sqrt2x2_psd(const Mat& h) {
    const Eig2 e = eig2x2_hermitian(h);
    Mat out = Mat::Zero(2, 2);
    for (int k = 0; k < 2; ++k)
        out += std::sqrt(std::max(e.lambda[k], 0.0)) * e.vec[k] * e.vec[k].adjoint();
    return out;
}

}  // namespace oracle
