#pragma once

#include <string>
#include <utility>

#include "idsym/halmos.hpp"
#include "idsym/idempotent.hpp"
#include "idsym/linalg.hpp"

namespace idsym {

/// Parameter of the J P J = I - P family: a unitary U from R(P)^perp
/// coordinates to R(P) coordinates with U* P1 = P1* U. Such a U can only
/// exist when dim R(P) = dim R(P)^perp.
struct GammaParam {
    ComplexMatrix U;  ///< r x (n-r)
};

/// Parameter of the J P J = I - P* family: a unitary U from R(P) coordinates
/// to R(P)^perp coordinates with U P1 = P1* U*.
struct DeltaParam {
    ComplexMatrix U;  ///< (n-r) x r
};

/// Parameter of the J P >= 0 family: an orthogonal projection E on R(P)^perp
/// coordinates whose range lies inside N(P1). The corner symmetry of the
/// block form is J2 = 2E - I; E = 0 gives the Loewner-minimal element.
struct PositiveParam {
    ComplexMatrix E;  ///< (n-r) x (n-r)
};

/// Structure of a unitary U making U A self-adjoint: U splits as
/// J1 V1* (+) U2 with respect to R(A) (+) R(A)^perp -> N(A)^perp (+) N(A).
/// Blocks are expressed in the stored SVD-aligned bases, in which the polar
/// unitary V1 of A is the identity; U A >= 0 exactly when J1 = I.
struct FactorAnalysis {
    bool is_selfadjoint = false;
    bool is_positive = false;
    ComplexMatrix J1;              ///< k x k symmetry commuting with (A*A)^{1/2}
    ComplexMatrix V1;              ///< k x k polar unitary in aligned bases
    ComplexMatrix U2;              ///< (n-k) x (m-k) corner unitary
    ComplexMatrix domain_basis;    ///< n x n, [N(A)^perp | N(A)]
    ComplexMatrix codomain_basis;  ///< m x m, [R(A) | R(A)^perp]
    Index rank = 0;
};

namespace detail {

inline bool symmetry_axioms_hold(const ComplexMatrix& j, const ToleranceConfig& tol) {
    if (j.rows() != j.cols()) return false;
    const double scale = 1.0 + fnorm(j);
    if (fnorm(j - j.adjoint()) > tol.residual_atol * scale) return false;
    return fnorm(j * j - ComplexMatrix::Identity(j.rows(), j.rows())) <=
           tol.residual_atol * scale * scale;
}

// Unitary factor of the completed polar decomposition A = V (A*A)^{1/2};
// requires a square A.
inline ComplexMatrix completed_polar_unitary(const ComplexMatrix& a, const ToleranceConfig& tol) {
    return *polar_decompose(a, tol, /*complete=*/true).unitary_completion;
}

inline void require_half_rank(const Idempotent& p, const ToleranceConfig& tol) {
    const auto [d_plus, d_minus] = kernel_dims(p, tol);
    if (d_plus != d_minus)
        throw NotExists("family is empty: dim N(P+P*) = " + std::to_string(d_plus) +
                        ", dim N(2I-P-P*) = " + std::to_string(d_minus));
}

}  // namespace detail

inline bool is_in_gamma(const Idempotent& p, const ComplexMatrix& j,
                        const ToleranceConfig& tol = {}) {
    if (j.rows() != p.dim() || j.cols() != p.dim()) return false;
    if (!detail::symmetry_axioms_hold(j, tol)) return false;
    return gamma_defect(p, j) <= tol.residual_atol;
}

inline bool is_in_delta(const Idempotent& p, const ComplexMatrix& j,
                        const ToleranceConfig& tol = {}) {
    if (j.rows() != p.dim() || j.cols() != p.dim()) return false;
    if (!detail::symmetry_axioms_hold(j, tol)) return false;
    return delta_defect(p, j) <= tol.residual_atol;
}

inline bool is_positive_pair(const Idempotent& p, const ComplexMatrix& j,
                             const ToleranceConfig& tol = {}) {
    if (!detail::symmetry_axioms_hold(j, tol)) return false;
    return positive_pair_holds(p, j, tol);
}

namespace detail {

// Theorem block for the I - P family, in block coordinates:
//   [[ -U Y P1*, U Y ], [ Y U*, P1* U Y ]]  with  Y = (I + P1* P1)^{-1/2}.
inline Symmetry assemble_gamma(const Idempotent& p, const ComplexMatrix& u,
                               const ToleranceConfig& tol) {
    const BlockForm& bf = p.block(tol);
    const ComplexMatrix y = inv_sqrt_one_plus(bf.P1.adjoint() * bf.P1);
    const ComplexMatrix block =
        assemble2x2(-u * y * bf.P1.adjoint(), u * y, y * u.adjoint(), bf.P1.adjoint() * u * y);
    Symmetry out = Symmetry::validate(bf.to_ambient(block), tol);
    if (gamma_defect(p, out.matrix()) > tol.residual_atol)
        throw CertificationFailed("assemble_gamma: J P J = I - P failed");
    out.add_certification(Family::Gamma);
    return out;
}

// Off-diagonal block for the I - P* family: [[0, iU*], [-iU, 0]].
inline Symmetry assemble_delta(const Idempotent& p, const ComplexMatrix& u,
                               const ToleranceConfig& tol) {
    const BlockForm& bf = p.block(tol);
    const Index r = bf.r, c = p.dim() - bf.r;
    const Complex im(0.0, 1.0);
    const ComplexMatrix block = assemble2x2(ComplexMatrix::Zero(r, r), im * u.adjoint(),
                                            -im * u, ComplexMatrix::Zero(c, c));
    Symmetry out = Symmetry::validate(bf.to_ambient(block), tol);
    if (delta_defect(p, out.matrix()) > tol.residual_atol)
        throw CertificationFailed("assemble_delta: J P J = I - P* failed");
    out.add_certification(Family::Delta);
    return out;
}

}  // namespace detail

/// Canonical element of the J P J = I - P family, built from the completed
/// polar decomposition P1* = V (P1 P1*)^{1/2} with U = V*.
inline Symmetry canonical_gamma(const Idempotent& p, const ToleranceConfig& tol = {}) {
    detail::require_half_rank(p, tol);
    const BlockForm& bf = p.block(tol);
    const ComplexMatrix v = detail::completed_polar_unitary(bf.P1.adjoint(), tol);
    return detail::assemble_gamma(p, v.adjoint(), tol);
}

/// Element of the J P J = I - P family for a caller-supplied parameter.
inline Symmetry construct_gamma(const Idempotent& p, const GammaParam& param,
                                const ToleranceConfig& tol = {}) {
    const BlockForm& bf = p.block(tol);
    const Index r = bf.r, c = p.dim() - bf.r;
    if (r != c)
        throw NotExists("construct_gamma: dim R(P) = " + std::to_string(r) +
                        " != dim R(P)^perp = " + std::to_string(c));
    if (param.U.rows() != r || param.U.cols() != c)
        throw BadParam("construct_gamma: U must be " + std::to_string(r) + " x " +
                       std::to_string(c));
    if (!is_unitary(param.U, tol)) throw BadParam("construct_gamma: U is not unitary");
    const ComplexMatrix lhs = param.U.adjoint() * bf.P1;
    const ComplexMatrix rhs = bf.P1.adjoint() * param.U;
    if (fnorm(lhs - rhs) > tol.residual_atol * (1.0 + fnorm(bf.P1)))
        throw BadParam("construct_gamma: U* P1 = P1* U violated");
    return detail::assemble_gamma(p, param.U, tol);
}

/// Builds a valid parameter U = V J1 from a symmetry J1 on R(P)^perp
/// coordinates commuting with P1* P1, where V is the polar unitary of P1.
/// Requires dim N(P+P*) = dim N(2I-P-P*) = 0, i.e. an invertible corner.
inline GammaParam gamma_param_from_seed(const Idempotent& p, const ComplexMatrix& j1_spec,
                                        const ToleranceConfig& tol = {}) {
    const auto [d_plus, d_minus] = kernel_dims(p, tol);
    if (d_plus != 0 || d_minus != 0)
        throw NotApplicable("gamma_param_from_seed: kernel dims (" + std::to_string(d_plus) +
                            "," + std::to_string(d_minus) + ") are not (0,0)");
    const BlockForm& bf = p.block(tol);
    const Index c = p.dim() - bf.r;
    if (j1_spec.rows() != c || j1_spec.cols() != c)
        throw BadParam("gamma_param_from_seed: J1 must act on R(P)^perp coordinates");
    if (!detail::symmetry_axioms_hold(j1_spec, tol))
        throw BadParam("gamma_param_from_seed: J1 is not a symmetry");
    const ComplexMatrix k = bf.P1.adjoint() * bf.P1;
    if (fnorm(j1_spec * k - k * j1_spec) >
        tol.residual_atol * (1.0 + fnorm(k)) * (1.0 + fnorm(j1_spec)))
        throw BadParam("gamma_param_from_seed: J1 does not commute with P1* P1");
    const ComplexMatrix v = detail::completed_polar_unitary(bf.P1, tol);
    return GammaParam{v * j1_spec};
}

/// Recovers the unique parameter of a member J: the (1,2) block of J in
/// block coordinates equals U (I + P1* P1)^{-1/2}.
inline GammaParam extract_gamma_param(const Idempotent& p, const Symmetry& j,
                                      const ToleranceConfig& tol = {}) {
    if (!is_in_gamma(p, j.matrix(), tol))
        throw NotMember("extract_gamma_param: J P J = I - P does not hold");
    const BlockForm& bf = p.block(tol);
    const Index r = bf.r, c = p.dim() - bf.r;
    const ComplexMatrix jb = bf.to_block(j.matrix());
    ComplexMatrix u = jb.block(0, r, r, c) * sqrt_one_plus(bf.P1.adjoint() * bf.P1);
    if (!is_unitary(u, tol))
        throw CertificationFailed("extract_gamma_param: extracted parameter is not unitary");
    return GammaParam{std::move(u)};
}

/// Canonical element of the J P J = I - P* family:
/// [[0, iV*], [-iV, 0]] with P1* = V (P1 P1*)^{1/2}.
inline Symmetry canonical_delta(const Idempotent& p, const ToleranceConfig& tol = {}) {
    detail::require_half_rank(p, tol);
    const BlockForm& bf = p.block(tol);
    const ComplexMatrix v = detail::completed_polar_unitary(bf.P1.adjoint(), tol);
    return detail::assemble_delta(p, v, tol);
}

/// Element of the J P J = I - P* family for a caller-supplied parameter.
inline Symmetry construct_delta(const Idempotent& p, const DeltaParam& param,
                                const ToleranceConfig& tol = {}) {
    const BlockForm& bf = p.block(tol);
    const Index r = bf.r, c = p.dim() - bf.r;
    if (r != c)
        throw NotExists("construct_delta: dim R(P) = " + std::to_string(r) +
                        " != dim R(P)^perp = " + std::to_string(c));
    if (param.U.rows() != c || param.U.cols() != r)
        throw BadParam("construct_delta: U must be " + std::to_string(c) + " x " +
                       std::to_string(r));
    if (!is_unitary(param.U, tol)) throw BadParam("construct_delta: U is not unitary");
    const ComplexMatrix lhs = param.U * bf.P1;
    const ComplexMatrix rhs = bf.P1.adjoint() * param.U.adjoint();
    if (fnorm(lhs - rhs) > tol.residual_atol * (1.0 + fnorm(bf.P1)))
        throw BadParam("construct_delta: U P1 = P1* U* violated");
    return detail::assemble_delta(p, param.U, tol);
}

/// Recovers the parameter of a member J from its (2,1) block, which equals
/// -iU in block coordinates.
inline DeltaParam extract_delta_param(const Idempotent& p, const Symmetry& j,
                                      const ToleranceConfig& tol = {}) {
    if (!is_in_delta(p, j.matrix(), tol))
        throw NotMember("extract_delta_param: J P J = I - P* does not hold");
    const BlockForm& bf = p.block(tol);
    const Index r = bf.r, c = p.dim() - bf.r;
    const ComplexMatrix jb = bf.to_block(j.matrix());
    ComplexMatrix u = Complex(0.0, 1.0) * jb.block(r, 0, c, r);
    if (!is_unitary(u, tol))
        throw CertificationFailed("extract_delta_param: extracted parameter is not unitary");
    return DeltaParam{std::move(u)};
}

/// Member of the J P >= 0 family for a subprojection E of the projection
/// onto N(P1); the corner symmetry is J2 = 2E - I. E = 0 reproduces the
/// Loewner-minimal element.
inline Symmetry construct_positive_symmetry(const Idempotent& p, const PositiveParam& param,
                                            const ToleranceConfig& tol = {}) {
    const BlockForm& bf = p.block(tol);
    const Index c = p.dim() - bf.r;
    const ComplexMatrix& e = param.E;
    if (e.rows() != c || e.cols() != c)
        throw BadParam("construct_positive_symmetry: E must act on R(P)^perp coordinates");
    const double scale = 1.0 + fnorm(e);
    if (fnorm(e - e.adjoint()) > tol.residual_atol * scale ||
        fnorm(e * e - e) > tol.residual_atol * scale * scale)
        throw BadParam("construct_positive_symmetry: E is not an orthogonal projection");
    if (fnorm(bf.P1 * e) > tol.residual_atol * (1.0 + fnorm(bf.P1)))
        throw BadParam("construct_positive_symmetry: R(E) is not contained in N(P1)");
    const ComplexMatrix j2 = 2.0 * e - ComplexMatrix::Identity(c, c);
    const ComplexMatrix x = inv_sqrt_one_plus(bf.P1 * bf.P1.adjoint());
    const ComplexMatrix y = inv_sqrt_one_plus(bf.P1.adjoint() * bf.P1);
    const ComplexMatrix block =
        assemble2x2(x, x * bf.P1, bf.P1.adjoint() * x, j2 * y);
    Symmetry out = Symmetry::validate(bf.to_ambient(block), tol);
    if (!positive_pair_holds(p, out.matrix(), tol))
        throw CertificationFailed("construct_positive_symmetry: J P failed the positivity check");
    out.add_certification(Family::PositivePair);
    return out;
}

/// True iff some unitary U makes U A self-adjoint, i.e. the two kernels have
/// the same dimension.
inline bool factor_exists(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    const Index rank = numerical_rank(a, tol);
    return a.cols() - rank == a.rows() - rank;
}

/// Splits a unitary U with U A self-adjoint into its diagonal blocks with
/// respect to R(A) (+) R(A)^perp -> N(A)^perp (+) N(A).
inline FactorAnalysis analyze_unitary_factor(const ComplexMatrix& a, const ComplexMatrix& u,
                                             const ToleranceConfig& tol = {}) {
    if (u.rows() != a.cols() || u.cols() != a.rows())
        throw ShapeMismatch("analyze_unitary_factor: U must map the codomain of A to its domain");
    if (!is_unitary(u, tol)) throw NotUnitary("analyze_unitary_factor: U is not unitary");
    const Svd s = svd_full(a);
    FactorAnalysis out;
    out.rank = numerical_rank(s.sigma, tol.rank_rtol);
    out.codomain_basis = s.U;
    out.domain_basis = s.V;
    const ComplexMatrix ua = u * a;
    out.is_selfadjoint = fnorm(ua - ua.adjoint()) <= tol.residual_atol * (1.0 + fnorm(ua));
    if (!out.is_selfadjoint) return out;
    const Index k = out.rank, n = a.cols(), m = a.rows();
    const ComplexMatrix ublocks = s.V.adjoint() * u * s.U;
    out.V1 = ComplexMatrix::Identity(k, k);
    out.J1 = ublocks.topLeftCorner(k, k) * out.V1;
    out.U2 = ublocks.bottomRightCorner(n - k, m - k);
    out.is_positive = fnorm(out.J1 - ComplexMatrix::Identity(k, k)) <=
                      tol.residual_atol * (1.0 + static_cast<double>(k));
    return out;
}

}  // namespace idsym
