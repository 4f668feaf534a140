#pragma once

#include <optional>
#include <utility>

#include "idsym/families.hpp"
#include "idsym/halmos.hpp"
#include "idsym/idempotent.hpp"

namespace idsym {

/// Factorization J = -i J1 J2 = i J2 J1 of a member of the J P J = I - P*
/// family, with J1 in the I - P family and J2 the Loewner-minimal positive
/// symmetry. The pair is unique.
struct DeltaDecomposition {
    Symmetry J1;
    Symmetry J2;
    double residual = 0.0;  ///< max reconstruction / re-extraction error
};

/// Splits J in the I - P* family as -i J1 J2. J2 is the minimal positive
/// symmetry; J1 = i J J2 lands in the I - P family; both reconstructions and
/// the re-extraction J2 = i J1 J are certified.
inline DeltaDecomposition delta_decompose(const Idempotent& p, const Symmetry& j,
                                          const ToleranceConfig& tol = {}) {
    if (!is_in_delta(p, j.matrix(), tol))
        throw NotMember("delta_decompose: J P J = I - P* does not hold");
    const Complex im(0.0, 1.0);
    Symmetry j2 = min_positive_symmetry(p, tol);
    Symmetry j1 = Symmetry::validate(im * j.matrix() * j2.matrix(), tol);
    if (gamma_defect(p, j1.matrix()) > tol.residual_atol)
        throw CertificationFailed("delta_decompose: extracted J1 is not in the I - P family");
    j1.add_certification(Family::Gamma);

    const double norm_scale = 1.0 + fnorm(j.matrix());
    double residual = fnorm(-im * j1.matrix() * j2.matrix() - j.matrix()) / norm_scale;
    residual = std::max(residual,
                        fnorm(im * j2.matrix() * j1.matrix() - j.matrix()) / norm_scale);
    residual = std::max(residual, fnorm(im * j1.matrix() * j.matrix() - j2.matrix()) /
                                      (1.0 + fnorm(j2.matrix())));
    if (residual > tol.residual_atol)
        throw CertificationFailed("delta_decompose: reconstruction residual too large");
    return DeltaDecomposition{std::move(j1), std::move(j2), residual};
}

/// The bijection between the two families: J in I - P* maps to
/// i J J_min in I - P.
inline Symmetry gamma_from_delta(const Idempotent& p, const Symmetry& j,
                                 const ToleranceConfig& tol = {}) {
    if (!is_in_delta(p, j.matrix(), tol))
        throw NotMember("gamma_from_delta: J P J = I - P* does not hold");
    const Symmetry jmin = min_positive_symmetry(p, tol);
    Symmetry out =
        Symmetry::validate(Complex(0.0, 1.0) * j.matrix() * jmin.matrix(), tol);
    if (gamma_defect(p, out.matrix()) > tol.residual_atol)
        throw CertificationFailed("gamma_from_delta: image is not in the I - P family");
    out.add_certification(Family::Gamma);
    return out;
}

/// Inverse of gamma_from_delta: J1 in I - P maps to -i J1 J_min in I - P*.
inline Symmetry delta_from_gamma(const Idempotent& p, const Symmetry& j1,
                                 const ToleranceConfig& tol = {}) {
    if (!is_in_gamma(p, j1.matrix(), tol))
        throw NotMember("delta_from_gamma: J P J = I - P does not hold");
    const Symmetry jmin = min_positive_symmetry(p, tol);
    Symmetry out =
        Symmetry::validate(Complex(0.0, -1.0) * j1.matrix() * jmin.matrix(), tol);
    if (delta_defect(p, out.matrix()) > tol.residual_atol)
        throw CertificationFailed("delta_from_gamma: image is not in the I - P* family");
    out.add_certification(Family::Delta);
    return out;
}

/// Whether J' (positive for P) anticommutes with J (in the I - P* family).
/// Across the whole positive family this happens exactly when J' is the
/// minimal element |2P-I|(2P-I).
inline bool anticommute_check(const Idempotent& p, const Symmetry& j_prime, const Symmetry& j,
                              const ToleranceConfig& tol = {}) {
    if (!is_positive_pair(p, j_prime.matrix(), tol))
        throw NotMember("anticommute_check: J' P is not positive semidefinite");
    if (!is_in_delta(p, j.matrix(), tol))
        throw NotMember("anticommute_check: J P J = I - P* does not hold");
    const ComplexMatrix anti = j_prime.matrix() * j.matrix() + j.matrix() * j_prime.matrix();
    return fnorm(anti) <=
           tol.residual_atol * (1.0 + fnorm(j_prime.matrix())) * (1.0 + fnorm(j.matrix()));
}

/// Commuting factorization J = J3 J4 = J4 J3 with J3 in the I - P family and
/// J4 P >= 0. Such a pair exists precisely when P is an orthogonal
/// projection, in which case (J, I) works; otherwise the result is empty —
/// the dichotomy is decided, not searched for.
inline std::optional<std::pair<Symmetry, Symmetry>> commuting_decomposition(
    const Idempotent& p, const Symmetry& j, const ToleranceConfig& tol = {}) {
    if (!is_in_delta(p, j.matrix(), tol))
        throw NotMember("commuting_decomposition: J P J = I - P* does not hold");
    const double defect = fnorm(p.matrix() - p.matrix().adjoint());
    if (defect > tol.residual_atol * (1.0 + fnorm(p.matrix()))) return std::nullopt;
    Symmetry j3 = j;
    j3.add_certification(Family::Gamma);  // P = P* makes the two families coincide
    Symmetry j4 = Symmetry::validate(ComplexMatrix::Identity(p.dim(), p.dim()), tol);
    j4.add_certification(Family::PositivePair);
    return std::make_pair(std::move(j3), std::move(j4));
}

/// Equivalent characterizations of U P U* = Q for a unitary U, each evaluated
/// independently:
///   (i)   U P U* = Q
///   (ii)  U projects R(P), N(P) onto R(Q), N(Q)
///   (iii) U conjugates the projection difference and P - P* correctly
/// The three verdicts must agree; `consistent` records that they do.
struct IntertwineReport {
    bool conjugates_idempotent = false;
    bool conjugates_projections = false;
    bool conjugates_differences = false;
    bool consistent = false;

    bool all_hold() const {
        return conjugates_idempotent && conjugates_projections && conjugates_differences;
    }
};

inline IntertwineReport intertwine_check(const ComplexMatrix& u, const Idempotent& p,
                                         const Idempotent& q, const ToleranceConfig& tol = {}) {
    if (p.dim() != q.dim() || u.rows() != p.dim() || u.cols() != p.dim())
        throw ShapeMismatch("intertwine_check: U, P, Q must share one dimension");
    if (!is_unitary(u, tol)) throw NotUnitary("intertwine_check: U is not unitary");
    const double scale =
        (1.0 + fnorm(p.matrix())) * (1.0 + fnorm(q.matrix()));
    const auto close = [&](const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
        return fnorm(lhs - rhs) <= tol.residual_atol * scale;
    };
    IntertwineReport rep;
    rep.conjugates_idempotent = close(u * p.matrix() * u.adjoint(), q.matrix());

    const auto [p_range, p_null] = range_null_projections(p, tol);
    const auto [q_range, q_null] = range_null_projections(q, tol);
    rep.conjugates_projections = close(u * p_range * u.adjoint(), q_range) &&
                                 close(u * p_null * u.adjoint(), q_null);

    rep.conjugates_differences =
        close(u * (p_range - p_null) * u.adjoint(), q_range - q_null) &&
        close(u * (p.matrix() - p.matrix().adjoint()) * u.adjoint(),
              q.matrix() - q.matrix().adjoint());

    rep.consistent = rep.conjugates_idempotent == rep.conjugates_projections &&
                     rep.conjugates_projections == rep.conjugates_differences;
    return rep;
}

}  // namespace idsym
