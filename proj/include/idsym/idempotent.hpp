#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "idsym/linalg.hpp"

namespace idsym {

/// Canonical block data of an idempotent P on C^n with respect to
/// R(P) (+) R(P)^perp. In these coordinates P takes the form
/// [[I, P1], [0, 0]]; the corner block P1 measures how far P is from an
/// orthogonal projection.
struct BlockForm {
    Index r = 0;                ///< dim R(P)
    ComplexMatrix range_basis;  ///< n x r, orthonormal columns spanning R(P)
    ComplexMatrix perp_basis;   ///< n x (n-r), orthonormal complement
    ComplexMatrix P1;           ///< r x (n-r)

    /// The ambient unitary [range_basis | perp_basis].
    ComplexMatrix basis() const {
        ComplexMatrix q(range_basis.rows(), range_basis.cols() + perp_basis.cols());
        q.leftCols(range_basis.cols()) = range_basis;
        q.rightCols(perp_basis.cols()) = perp_basis;
        return q;
    }

    /// Maps a matrix in block coordinates back to the ambient basis.
    ComplexMatrix to_ambient(const ComplexMatrix& block_matrix) const {
        const ComplexMatrix q = basis();
        return q * block_matrix * q.adjoint();
    }

    /// Maps an ambient matrix into block coordinates.
    ComplexMatrix to_block(const ComplexMatrix& ambient) const {
        const ComplexMatrix q = basis();
        return q.adjoint() * ambient * q;
    }
};

/// A validated idempotent (P^2 = P within tolerance). The block form is
/// computed on first use and shared between copies; the first access wins the
/// race under concurrent use.
class Idempotent {
  public:
    /// Wraps M after checking ||M^2 - M|| <= residual_atol * (1 + ||M||)^2.
    static Idempotent validate(ComplexMatrix m, const ToleranceConfig& tol = {}) {
        require_square(m, "validate_idempotent");
        if (!all_finite(m)) throw NotIdempotent("validate_idempotent: non-finite entries");
        const double scale = 1.0 + fnorm(m);
        if (fnorm(m * m - m) > tol.residual_atol * scale * scale)
            throw NotIdempotent("validate_idempotent: ||P^2 - P|| exceeds tolerance");
        return Idempotent(std::move(m));
    }

    const ComplexMatrix& matrix() const { return mat_; }
    Index dim() const { return mat_.rows(); }

    const BlockForm& block(const ToleranceConfig& tol = {}) const {
        std::call_once(cache_->once, [&] { cache_->form = compute_block(mat_, tol); });
        return *cache_->form;
    }

    /// The adjoint idempotent P*.
    Idempotent adjoint() const { return Idempotent(mat_.adjoint()); }

  private:
    explicit Idempotent(ComplexMatrix m) : mat_(std::move(m)), cache_(std::make_shared<Cache>()) {}

    static BlockForm compute_block(const ComplexMatrix& p, const ToleranceConfig& tol) {
        const Svd s = svd_full(p);
        BlockForm bf;
        bf.r = numerical_rank(s.sigma, tol.rank_rtol);
        bf.range_basis = s.U.leftCols(bf.r);
        bf.perp_basis = s.U.rightCols(p.rows() - bf.r);
        bf.P1 = bf.range_basis.adjoint() * p * bf.perp_basis;
        return bf;
    }

    struct Cache {
        std::once_flag once;
        std::optional<BlockForm> form;
    };

    ComplexMatrix mat_;
    std::shared_ptr<Cache> cache_;
};

inline Idempotent validate_idempotent(ComplexMatrix m, const ToleranceConfig& tol = {}) {
    return Idempotent::validate(std::move(m), tol);
}

inline const BlockForm& block_form(const Idempotent& p, const ToleranceConfig& tol = {}) {
    return p.block(tol);
}

/// The (oblique) projections onto R(P) and N(P) obtained from the inverse of
/// P + P* - I:
///   P_R = P (P+P*-I)^{-1},   P_N = -(I-P) (P+P*-I)^{-1}.
/// Both are Hermitian orthogonal projections. For a genuine idempotent
/// |P+P*-I| >= I, so a smallest singular value below 0.5 signals corrupted
/// input rather than a borderline case.
inline std::pair<ComplexMatrix, ComplexMatrix> range_null_projections(
    const Idempotent& p, const ToleranceConfig& tol = {}) {
    const Index n = p.dim();
    if (n == 0) return {ComplexMatrix(0, 0), ComplexMatrix(0, 0)};
    const ComplexMatrix s = p.matrix() + p.matrix().adjoint() - ComplexMatrix::Identity(n, n);
    const Svd sv = svd_full(s);
    if (sv.sigma(n - 1) < 0.5)
        throw NearSingular("range_null_projections: P + P* - I is nearly singular");
    const ComplexMatrix inv = s.inverse();
    ComplexMatrix proj_range = p.matrix() * inv;
    ComplexMatrix proj_null = -(ComplexMatrix::Identity(n, n) - p.matrix()) * inv;
    return {std::move(proj_range), std::move(proj_null)};
}

/// (dim N(P+P*), dim N(2I-P-P*)), each computed twice: directly, and through
/// the corner block as dim N(P1) and dim N(P1*). The two routes must agree.
inline std::pair<Index, Index> kernel_dims(const Idempotent& p, const ToleranceConfig& tol = {}) {
    const Index n = p.dim();
    const ComplexMatrix sum = p.matrix() + p.matrix().adjoint();
    const Index d_plus = n - numerical_rank(sum, tol);
    const Index d_minus = n - numerical_rank(2.0 * ComplexMatrix::Identity(n, n) - sum, tol);

    const BlockForm& bf = p.block(tol);
    const Index rank_p1 = numerical_rank(bf.P1, tol);
    const Index d_plus_block = (n - bf.r) - rank_p1;
    const Index d_minus_block = bf.r - rank_p1;
    if (d_plus != d_plus_block || d_minus != d_minus_block)
        throw InconsistentRank("kernel_dims: direct and corner-block ranks disagree ((" +
                               std::to_string(d_plus) + "," + std::to_string(d_minus) +
                               ") vs (" + std::to_string(d_plus_block) + "," +
                               std::to_string(d_minus_block) + "))");
    return {d_plus, d_minus};
}

/// True iff dim N(P+P*) = dim N(2I-P-P*), which decides at once whether any
/// symmetry J with JPJ = I-P exists and whether any with JPJ = I-P* exists.
inline bool gamma_exists(const Idempotent& p, const ToleranceConfig& tol = {}) {
    const auto [d_plus, d_minus] = kernel_dims(p, tol);
    return d_plus == d_minus;
}

/// Random idempotent of rank r on C^n: a random corner block with
/// ||P1|| <= norm_cap assembled in a Haar-random basis.
inline Idempotent random_idempotent(Index n, Index r, double norm_cap, std::uint64_t seed,
                                    const ToleranceConfig& tol = {}) {
    if (n < 0 || r < 0 || r > n) throw ShapeMismatch("random_idempotent: need 0 <= r <= n");
    if (norm_cap < 0) throw BadParam("random_idempotent: norm_cap must be nonnegative");
    Rng rng(seed);
    const ComplexMatrix q = random_unitary(n, rng);
    ComplexMatrix p1 = random_gaussian(r, n - r, rng);
    const double nrm = spectral_norm(p1);
    if (nrm > norm_cap) p1 *= norm_cap / nrm;
    ComplexMatrix block = ComplexMatrix::Zero(n, n);
    block.topLeftCorner(r, r) = ComplexMatrix::Identity(r, r);
    block.topRightCorner(r, n - r) = p1;
    return Idempotent::validate(q * block * q.adjoint(), tol);
}

}  // namespace idsym
