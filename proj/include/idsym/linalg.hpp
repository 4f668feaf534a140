#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "idsym/errors.hpp"

namespace idsym {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerances governing every approximate check in the library.
///   rank_rtol     — singular values <= rank_rtol * sigma_max count as zero
///   residual_atol — bound for identity residuals, applied to Frobenius norms
///                   normalized by 1 + ||input||
///   psd_tol       — eigenvalue floor for positivity tests (<= 0)
struct ToleranceConfig {
    double rank_rtol = 1e-10;
    double residual_atol = 1e-8;
    double psd_tol = -1e-10;
};

/// Frobenius norm that is safe on zero-extent matrices.
inline double fnorm(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.norm(); }

/// ||actual - reference|| / (1 + ||reference||).
inline double rel_residual(const ComplexMatrix& actual, const ComplexMatrix& reference) {
    return fnorm(actual - reference) / (1.0 + fnorm(reference));
}

inline bool all_finite(const ComplexMatrix& a) {
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

inline double hermitian_defect(const ComplexMatrix& a) {
    return fnorm(a - a.adjoint()) / (1.0 + fnorm(a));
}

inline void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) throw ShapeMismatch(std::string(what) + ": matrix must be square");
}

inline void require_hermitian(const ComplexMatrix& a, const ToleranceConfig& tol, const char* what) {
    require_square(a, what);
    if (hermitian_defect(a) > tol.residual_atol)
        throw NotHermitian(std::string(what) + ": matrix is not Hermitian within tolerance");
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

namespace detail {

// Index of the first component whose magnitude is significant relative to the
// column maximum; -1 for an all-zero column.
inline Index first_significant(const ComplexMatrix& col) {
    double mx = 0.0;
    for (Index i = 0; i < col.rows(); ++i) mx = std::max(mx, std::abs(col(i, 0)));
    if (mx == 0.0) return -1;
    for (Index i = 0; i < col.rows(); ++i)
        if (std::abs(col(i, 0)) > 1e-12 * mx) return i;
    return -1;
}

// Phase of the anchor entry of a column, or 1 for a zero column.
inline Complex column_phase(const ComplexMatrix& col) {
    const Index i = first_significant(col);
    if (i < 0) return Complex(1.0, 0.0);
    const Complex z = col(i, 0);
    return z / std::abs(z);
}

}  // namespace detail

/// Hermitian eigendecomposition of (A+A*)/2 with eigenvalues ascending and a
/// fixed phase convention: each eigenvector's first nonzero component is made
/// real and positive, so decompositions are reproducible.
struct HermitianEigen {
    RealVector values;      ///< ascending
    ComplexMatrix vectors;  ///< columns, orthonormal, phase-fixed
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
    require_square(a, "hermitian_eigen");
    const Index n = a.rows();
    HermitianEigen out;
    if (n == 0) {
        out.values = RealVector(0);
        out.vectors = ComplexMatrix(0, 0);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success) throw Error("hermitian_eigen: eigensolver failed");
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    for (Index j = 0; j < n; ++j)
        out.vectors.col(j) *= std::conj(detail::column_phase(out.vectors.col(j)));
    return out;
}

/// Full SVD A = U diag(sigma) V* with sigma descending. The phase convention
/// makes each right singular vector's first nonzero component real-positive;
/// paired left singular vectors absorb the conjugate phase so the product is
/// preserved. Unpaired columns (beyond min(m,n)) are phase-fixed on their own.
struct Svd {
    ComplexMatrix U;   ///< m x m
    RealVector sigma;  ///< min(m,n), descending, nonnegative
    ComplexMatrix V;   ///< n x n
};

inline Svd svd_full(const ComplexMatrix& a) {
    const Index m = a.rows(), n = a.cols();
    Svd out;
    if (m == 0 || n == 0) {
        out.U = ComplexMatrix::Identity(m, m);
        out.sigma = RealVector(0);
        out.V = ComplexMatrix::Identity(n, n);
        return out;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.U = svd.matrixU();
    out.sigma = svd.singularValues();
    out.V = svd.matrixV();
    const Index k = std::min(m, n);
    for (Index j = 0; j < k; ++j) {
        const Complex ph = std::conj(detail::column_phase(out.V.col(j)));
        out.V.col(j) *= ph;
        out.U.col(j) *= ph;
    }
    for (Index j = k; j < n; ++j) out.V.col(j) *= std::conj(detail::column_phase(out.V.col(j)));
    for (Index j = k; j < m; ++j) out.U.col(j) *= std::conj(detail::column_phase(out.U.col(j)));
    return out;
}

/// Number of singular values above rank_rtol * sigma_max.
inline Index numerical_rank(const RealVector& sigma, double rank_rtol) {
    if (sigma.size() == 0) return 0;
    const double cut = rank_rtol * sigma(0);
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cut) ++r;
    return sigma(0) == 0.0 ? 0 : r;
}

inline Index numerical_rank(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    return numerical_rank(svd_full(a).sigma, tol.rank_rtol);
}

/// Spectral norm (largest singular value).
inline double spectral_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    const auto s = svd_full(a).sigma;
    return s.size() == 0 ? 0.0 : s(0);
}

/// Places four blocks into one matrix; zero-extent blocks are permitted.
inline ComplexMatrix assemble2x2(const ComplexMatrix& a11, const ComplexMatrix& a12,
                                 const ComplexMatrix& a21, const ComplexMatrix& a22) {
    if (a11.rows() != a12.rows() || a21.rows() != a22.rows() || a11.cols() != a21.cols() ||
        a12.cols() != a22.cols())
        throw ShapeMismatch("assemble2x2: inconsistent block shapes");
    ComplexMatrix m(a11.rows() + a21.rows(), a11.cols() + a12.cols());
    m.topLeftCorner(a11.rows(), a11.cols()) = a11;
    m.topRightCorner(a12.rows(), a12.cols()) = a12;
    m.bottomLeftCorner(a21.rows(), a21.cols()) = a21;
    m.bottomRightCorner(a22.rows(), a22.cols()) = a22;
    return m;
}

/// Positive square root of a Hermitian PSD matrix via eigendecomposition.
/// Eigenvalues in [psd_tol, 0) are clamped to zero; anything below psd_tol is
/// an error.
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    require_hermitian(a, tol, "hermitian_sqrt");
    const HermitianEigen eig = hermitian_eigen(a);
    RealVector roots(eig.values.size());
    for (Index i = 0; i < eig.values.size(); ++i) {
        const double lam = eig.values(i);
        if (lam < tol.psd_tol)
            throw NotPositive("hermitian_sqrt: eigenvalue " + std::to_string(lam) +
                              " below psd_tol");
        roots(i) = lam <= 0.0 ? 0.0 : std::sqrt(lam);
    }
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

/// |A| = (A*A)^{1/2}, computed from the SVD of A. Square or rectangular.
inline ComplexMatrix abs_value(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    (void)tol;
    const Svd s = svd_full(a);
    const Index n = a.cols();
    RealVector diag = RealVector::Zero(n);
    diag.head(s.sigma.size()) = s.sigma;
    return s.V * diag.asDiagonal() * s.V.adjoint();
}

/// (S+, S-) = ((|S|+S)/2, (|S|-S)/2) for Hermitian S. Both are PSD,
/// S+ - S- = S and S+ S- = 0.
inline std::pair<ComplexMatrix, ComplexMatrix> positive_negative_parts(
    const ComplexMatrix& s, const ToleranceConfig& tol = {}) {
    require_hermitian(s, tol, "positive_negative_parts");
    const HermitianEigen eig = hermitian_eigen(s);
    RealVector plus(eig.values.size()), minus(eig.values.size());
    for (Index i = 0; i < eig.values.size(); ++i) {
        plus(i) = std::max(eig.values(i), 0.0);
        minus(i) = std::max(-eig.values(i), 0.0);
    }
    return {eig.vectors * plus.asDiagonal() * eig.vectors.adjoint(),
            eig.vectors * minus.asDiagonal() * eig.vectors.adjoint()};
}

/// Polar factors of A: a partial isometry vanishing on N(A), the positive
/// factor |A|, and optionally a unitary extension of the isometry.
struct PolarFactors {
    ComplexMatrix partial_isometry;                  ///< m x n, A = W |A|
    ComplexMatrix positive_factor;                   ///< n x n, Hermitian PSD
    std::optional<ComplexMatrix> unitary_completion; ///< square, extends W on N(A)
};

/// A = W |A| with W = sum_i u_i v_i* over significant singular triplets. When
/// `complete` is set, the completion pairs trailing left/right singular
/// vectors in index order, which requires dim N(A) = dim N(A*), i.e. a square
/// input.
inline PolarFactors polar_decompose(const ComplexMatrix& a, const ToleranceConfig& tol = {},
                                    bool complete = false) {
    const Svd s = svd_full(a);
    const Index rank = numerical_rank(s.sigma, tol.rank_rtol);
    PolarFactors out;
    out.partial_isometry = s.U.leftCols(rank) * s.V.leftCols(rank).adjoint();
    if (out.partial_isometry.size() == 0)
        out.partial_isometry = ComplexMatrix::Zero(a.rows(), a.cols());
    RealVector diag = RealVector::Zero(a.cols());
    diag.head(s.sigma.size()) = s.sigma;
    out.positive_factor = s.V * diag.asDiagonal() * s.V.adjoint();
    if (complete) {
        const Index null_a = a.cols() - rank, null_astar = a.rows() - rank;
        if (null_a != null_astar)
            throw CompletionImpossible("polar_decompose: dim N(A) = " + std::to_string(null_a) +
                                       " but dim N(A*) = " + std::to_string(null_astar));
        out.unitary_completion = s.U * s.V.adjoint();
    }
    return out;
}

/// Orthonormal basis of the numerical null space of A, taken from the right
/// singular vectors with sigma <= rank_rtol * sigma_max, largest index first.
inline ComplexMatrix null_space_basis(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    const Svd s = svd_full(a);
    const Index rank = numerical_rank(s.sigma, tol.rank_rtol);
    const Index n = a.cols();
    ComplexMatrix basis(n, n - rank);
    for (Index j = 0; j < n - rank; ++j) basis.col(j) = s.V.col(n - 1 - j);
    return basis;
}

/// Loewner order test: A >= B iff min eig(A - B) >= psd_tol.
inline bool loewner_geq(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ToleranceConfig& tol = {}) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("loewner_geq: dimension mismatch");
    require_hermitian(a, tol, "loewner_geq (lhs)");
    require_hermitian(b, tol, "loewner_geq (rhs)");
    if (a.size() == 0) return true;
    const HermitianEigen eig = hermitian_eigen(a - b);
    return eig.values(0) >= tol.psd_tol;
}

/// Deterministic random stream. Doubles are derived directly from the raw
/// 64-bit engine output so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double uniform_pos() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

    /// Standard real Gaussian (Box-Muller).
    double gaussian() {
        const double u = uniform_pos(), v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
    }

    /// Complex Gaussian with E|z|^2 = 1.
    Complex complex_gaussian() {
        const double u = uniform_pos(), v = uniform();
        return std::polar(std::sqrt(-std::log(u)), kTwoPi * v);
    }

  private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;
    std::mt19937_64 gen_;
};

inline ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, normalized so
/// the triangular factor has positive real diagonal.
inline ComplexMatrix random_unitary(Index n, Rng& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const Eigen::VectorXcd diag = qr.matrixQR().diagonal();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(diag(j));
        q.col(j) *= mag == 0.0 ? Complex(1.0, 0.0) : diag(j) / mag;
    }
    return q;
}

inline ComplexMatrix random_unitary(Index n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

/// (I+H)^{1/2} for Hermitian PSD H; negative rounding noise is clamped.
inline ComplexMatrix sqrt_one_plus(const ComplexMatrix& h) {
    const HermitianEigen eig = hermitian_eigen(h);
    RealVector d(eig.values.size());
    for (Index i = 0; i < d.size(); ++i) d(i) = std::sqrt(1.0 + std::max(eig.values(i), 0.0));
    return eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
}

/// (I+H)^{-1/2} for Hermitian PSD H.
inline ComplexMatrix inv_sqrt_one_plus(const ComplexMatrix& h) {
    const HermitianEigen eig = hermitian_eigen(h);
    RealVector d(eig.values.size());
    for (Index i = 0; i < d.size(); ++i)
        d(i) = 1.0 / std::sqrt(1.0 + std::max(eig.values(i), 0.0));
    return eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
}

inline bool is_unitary(const ComplexMatrix& u, const ToleranceConfig& tol = {}) {
    if (u.rows() != u.cols()) return false;
    const Index n = u.rows();
    return fnorm(u.adjoint() * u - ComplexMatrix::Identity(n, n)) <=
           tol.residual_atol * (1.0 + fnorm(u)) * (1.0 + fnorm(u));
}

}  // namespace idsym
