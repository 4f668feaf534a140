#pragma once

// Hand-derived 2x2 fixtures. Every matrix below was computed by pencil and
// paper from the corner-block value (P1 = 1 and P1 = 2 respectively) and is
// frozen here as a literal; the suites compare library output against these
// at 1e-12.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace fixtures {

using Mat = Eigen::MatrixXcd;
using C = std::complex<double>;

inline Mat m2(C a, C b, C c, C d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline const C kI{0.0, 1.0};

struct ObliqueFixture {
    Mat P;             // the idempotent
    double p1;         // scalar corner block
    Mat abs2PmI;       // |2P - I|
    Mat abs2PmI_inv;   // |2P - I|^{-1}
    Mat Jprime;        // (2P-I)|2P-I|^{-1}, also the minimal positive symmetry
    Mat Jgamma;        // canonical element with J P J = I - P
    Mat Jdelta;        // canonical element with J P J = I - P*
    Mat proj_range;    // P (P+P*-I)^{-1}
    Mat proj_null;     // -(I-P) (P+P*-I)^{-1}
    C gamma_param;     // parameter recovered from Jgamma
};

// P = [[1, 1], [0, 0]], corner block 1.
inline ObliqueFixture oblique1() {
    const double s = 1.0 / std::sqrt(2.0);
    ObliqueFixture f;
    f.P = m2(1, 1, 0, 0);
    f.p1 = 1.0;
    f.abs2PmI = s * m2(1, 1, 1, 3);
    f.abs2PmI_inv = s * m2(3, -1, -1, 1);
    f.Jprime = s * m2(1, 1, 1, -1);
    f.Jgamma = s * m2(-1, 1, 1, 1);
    f.Jdelta = m2(0, kI, -kI, 0);
    f.proj_range = m2(1, 0, 0, 0);
    f.proj_null = 0.5 * m2(1, -1, -1, 1);
    f.gamma_param = 1.0;
    return f;
}

// P = [[1, 2], [0, 0]], corner block 2.
inline ObliqueFixture oblique2() {
    const double s = 1.0 / std::sqrt(5.0);
    ObliqueFixture f;
    f.P = m2(1, 2, 0, 0);
    f.p1 = 2.0;
    f.abs2PmI = s * m2(1, 2, 2, 9);
    f.abs2PmI_inv = s * m2(9, -2, -2, 1);
    f.Jprime = s * m2(1, 2, 2, -1);
    f.Jgamma = s * m2(-2, 1, 1, 2);
    f.Jdelta = m2(0, kI, -kI, 0);
    f.proj_range = m2(1, 0, 0, 0);
    f.proj_null = 0.2 * m2(4, -2, -2, 1);
    f.gamma_param = 1.0;
    return f;
}

}  // namespace fixtures
