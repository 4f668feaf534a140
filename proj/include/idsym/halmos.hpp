#pragma once

#include <utility>

#include "idsym/idempotent.hpp"
#include "idsym/linalg.hpp"

namespace idsym {

/// Families a symmetry can be certified to belong to, always relative to the
/// idempotent it was built from or checked against:
///   Gamma        — J P J = I - P
///   Delta        — J P J = I - P*
///   PositivePair — J P is positive semidefinite
enum class Family : unsigned { Gamma = 1u, Delta = 2u, PositivePair = 4u };

/// A validated symmetry: J = J* = J^{-1}. Carries the set of family
/// memberships that have been numerically certified.
class Symmetry {
  public:
    static Symmetry validate(ComplexMatrix j, const ToleranceConfig& tol = {}) {
        require_square(j, "Symmetry::validate");
        const double scale = 1.0 + fnorm(j);
        if (fnorm(j - j.adjoint()) > tol.residual_atol * scale)
            throw NotSymmetry("Symmetry::validate: J is not self-adjoint within tolerance");
        const Index n = j.rows();
        if (fnorm(j * j - ComplexMatrix::Identity(n, n)) > tol.residual_atol * scale * scale)
            throw NotSymmetry("Symmetry::validate: J^2 differs from I beyond tolerance");
        return Symmetry(std::move(j), 0u);
    }

    const ComplexMatrix& matrix() const { return mat_; }
    Index dim() const { return mat_.rows(); }

    bool certified(Family f) const { return (tags_ & static_cast<unsigned>(f)) != 0u; }

    /// Records a membership certification. Library construction and check
    /// routines call this after the corresponding residual test has passed.
    Symmetry& add_certification(Family f) {
        tags_ |= static_cast<unsigned>(f);
        return *this;
    }

  private:
    Symmetry(ComplexMatrix j, unsigned tags) : mat_(std::move(j)), tags_(tags) {}

    ComplexMatrix mat_;
    unsigned tags_ = 0;
};

/// ||J P J - (I - P)|| / ((1+||P||)(1+||J||)).
inline double gamma_defect(const Idempotent& p, const ComplexMatrix& j) {
    const Index n = p.dim();
    const ComplexMatrix lhs = j * p.matrix() * j;
    const ComplexMatrix rhs = ComplexMatrix::Identity(n, n) - p.matrix();
    return fnorm(lhs - rhs) / ((1.0 + fnorm(p.matrix())) * (1.0 + fnorm(j)));
}

/// ||J P J - (I - P*)|| / ((1+||P||)(1+||J||)).
inline double delta_defect(const Idempotent& p, const ComplexMatrix& j) {
    const Index n = p.dim();
    const ComplexMatrix lhs = j * p.matrix() * j;
    const ComplexMatrix rhs = ComplexMatrix::Identity(n, n) - p.matrix().adjoint();
    return fnorm(lhs - rhs) / ((1.0 + fnorm(p.matrix())) * (1.0 + fnorm(j)));
}

/// Hermitian defect of J P, normalized the same way. J P being Hermitian PSD
/// additionally needs its smallest eigenvalue above psd_tol.
inline double positive_pair_defect(const Idempotent& p, const ComplexMatrix& j) {
    const ComplexMatrix jp = j * p.matrix();
    return fnorm(jp - jp.adjoint()) / ((1.0 + fnorm(p.matrix())) * (1.0 + fnorm(j)));
}

inline bool positive_pair_holds(const Idempotent& p, const ComplexMatrix& j,
                                const ToleranceConfig& tol) {
    if (j.rows() != p.dim() || j.cols() != p.dim()) return false;
    if (positive_pair_defect(p, j) > tol.residual_atol) return false;
    if (p.dim() == 0) return true;
    const HermitianEigen eig = hermitian_eigen(j * p.matrix());
    return eig.values(0) >= tol.psd_tol;
}

/// Computational routes for the canonical symmetry of an idempotent.
///   Direct     — (2P-I)|2P-I|^{-1}
///   SumAdjoint — (P+P*-I)|P+P*-I|^{-1}
///   Block      — corner-block assembly; no full-size inverse, best
///                conditioned, and the default everywhere else.
enum class HalmosRoute { Direct, SumAdjoint, Block };

namespace detail {

inline ComplexMatrix polar_sign(const ComplexMatrix& m, const ToleranceConfig& tol) {
    return m * abs_value(m, tol).inverse();
}

}  // namespace detail

/// The canonical symmetry J' = (2P-I)|2P-I|^{-1} of an idempotent. All routes
/// produce the same operator; J' P is always positive semidefinite and the
/// result is certified accordingly.
inline Symmetry halmos_symmetry(const Idempotent& p, HalmosRoute route,
                                const ToleranceConfig& tol = {}) {
    const Index n = p.dim();
    ComplexMatrix j;
    switch (route) {
        case HalmosRoute::Direct:
            j = detail::polar_sign(2.0 * p.matrix() - ComplexMatrix::Identity(n, n), tol);
            break;
        case HalmosRoute::SumAdjoint:
            j = detail::polar_sign(
                p.matrix() + p.matrix().adjoint() - ComplexMatrix::Identity(n, n), tol);
            break;
        case HalmosRoute::Block: {
            const BlockForm& bf = p.block(tol);
            const ComplexMatrix x = inv_sqrt_one_plus(bf.P1 * bf.P1.adjoint());
            const ComplexMatrix y = inv_sqrt_one_plus(bf.P1.adjoint() * bf.P1);
            j = bf.to_ambient(assemble2x2(x, x * bf.P1, bf.P1.adjoint() * x, -y));
            break;
        }
    }
    Symmetry out = Symmetry::validate(std::move(j), tol);
    if (!positive_pair_holds(p, out.matrix(), tol))
        throw CertificationFailed("halmos_symmetry: J'P failed the positivity check");
    out.add_certification(Family::PositivePair);
    return out;
}

inline Symmetry halmos_symmetry(const Idempotent& p, const ToleranceConfig& tol = {}) {
    return halmos_symmetry(p, HalmosRoute::Block, tol);
}

/// Closed-form |2P-I| (or its inverse) assembled from the corner block:
///   |2P-I|      = [[ S,    S P1                  ],
///                  [ P1* S, (I+2 P1* P1) T       ]]
///   |2P-I|^{-1} = [[ (I+2 P1 P1*) S, -S P1       ],
///                  [ -P1* S,         T           ]]
/// with S = (I+P1 P1*)^{-1/2} and T = (I+P1* P1)^{-1/2}.
inline ComplexMatrix abs_2p_minus_i(const Idempotent& p, bool inverse,
                                    const ToleranceConfig& tol = {}) {
    const BlockForm& bf = p.block(tol);
    const Index r = bf.r, c = p.dim() - bf.r;
    const ComplexMatrix a = bf.P1 * bf.P1.adjoint();
    const ComplexMatrix b = bf.P1.adjoint() * bf.P1;
    const ComplexMatrix s = inv_sqrt_one_plus(a);
    const ComplexMatrix t = inv_sqrt_one_plus(b);
    ComplexMatrix block;
    if (inverse) {
        block = assemble2x2((ComplexMatrix::Identity(r, r) + 2.0 * a) * s, -s * bf.P1,
                            -bf.P1.adjoint() * s, t);
    } else {
        block = assemble2x2(s, s * bf.P1, bf.P1.adjoint() * s,
                            (ComplexMatrix::Identity(c, c) + 2.0 * b) * t);
    }
    return bf.to_ambient(block);
}

/// The Loewner-minimal symmetry J with J P >= 0, computed as
/// 2 Proj(R((P+P*)^+)) - I. Eigenvalues of P+P* above rank_rtol * ||P+P*||
/// count as strictly positive; ties at the threshold are excluded.
inline Symmetry min_positive_symmetry(const Idempotent& p, const ToleranceConfig& tol = {}) {
    const Index n = p.dim();
    const HermitianEigen eig = hermitian_eigen(p.matrix() + p.matrix().adjoint());
    double scale = 0.0;
    for (Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(eig.values(i)));
    const double cut = tol.rank_rtol * scale;
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        if (eig.values(i) > cut)
            proj += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    Symmetry out =
        Symmetry::validate(2.0 * proj - ComplexMatrix::Identity(n, n), tol);
    if (!positive_pair_holds(p, out.matrix(), tol))
        throw CertificationFailed("min_positive_symmetry: J P failed the positivity check");
    out.add_certification(Family::PositivePair);
    return out;
}

}  // namespace idsym
