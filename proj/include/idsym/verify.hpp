#pragma once

#include <string>
#include <utility>

#include "idsym/halmos.hpp"
#include "idsym/idempotent.hpp"
#include "idsym/report.hpp"

namespace idsym {

/// Runs the full battery of operator identities an idempotent must satisfy
/// and reports one entry per identity. Nothing fails fast: a single run
/// surfaces every violated identity.
inline Report identity_suite(const Idempotent& p, const ToleranceConfig& tol = {},
                             InstanceInfo instance = {}) {
    const Index n = p.dim();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix two_p_minus_i = 2.0 * p.matrix() - ident;
    const ComplexMatrix sum_minus_i = p.matrix() + p.matrix().adjoint() - ident;

    Report rep;
    instance.n = n;
    rep.instance = std::move(instance);
    const auto add = [&](std::string id, std::string anchor, double residual) {
        rep.entries.push_back(
            {std::move(id), std::move(anchor), residual, residual <= tol.residual_atol});
    };

    const ComplexMatrix abs_direct = abs_value(two_p_minus_i, tol);
    const ComplexMatrix abs_direct_inv = abs_direct.inverse();
    const ComplexMatrix abs_adjoint = abs_value(two_p_minus_i.adjoint(), tol);

    add("abs-adjoint-inverse", "Lemma 2.1", rel_residual(abs_adjoint, abs_direct_inv));

    const Symmetry j_direct = halmos_symmetry(p, HalmosRoute::Direct, tol);
    {
        const ComplexMatrix& j = j_direct.matrix();
        const double scale = (1.0 + fnorm(j)) * (1.0 + fnorm(j));
        const double axioms =
            std::max(fnorm(j - j.adjoint()), fnorm(j * j - ident)) / scale;
        add("halmos-symmetry-axioms", "Lemma 2.2", axioms);
    }
    {
        const Idempotent p_adj = p.adjoint();
        const Symmetry j_of_adj = halmos_symmetry(p_adj, HalmosRoute::Direct, tol);
        add("halmos-adjoint-invariance", "Lemma 2.2",
            rel_residual(j_of_adj.matrix(), j_direct.matrix()));
    }
    add("halmos-route-sum", "Theorem 2.3",
        rel_residual(halmos_symmetry(p, HalmosRoute::SumAdjoint, tol).matrix(),
                     j_direct.matrix()));
    add("halmos-route-block", "Lemma 3.7",
        rel_residual(halmos_symmetry(p, HalmosRoute::Block, tol).matrix(), j_direct.matrix()));

    add("abs-block-form", "Corollary 2.4 Eq. (2.4)",
        rel_residual(abs_2p_minus_i(p, false, tol), abs_direct));
    add("abs-inverse-block-form", "Corollary 2.4 Eq. (2.3)",
        rel_residual(abs_2p_minus_i(p, true, tol), abs_direct_inv));
    add("abs-mean-identity", "Eq. (2.2)",
        rel_residual(0.5 * (abs_direct + abs_adjoint), abs_value(sum_minus_i, tol)));

    {
        const BlockForm& bf = p.block(tol);
        const ComplexMatrix lhs = bf.P1 * inv_sqrt_one_plus(bf.P1.adjoint() * bf.P1);
        const ComplexMatrix rhs = inv_sqrt_one_plus(bf.P1 * bf.P1.adjoint()) * bf.P1;
        add("corner-commutation", "Eq. (2.6)", rel_residual(lhs, rhs));
    }

    try {
        kernel_dims(p, tol);
        add("kernel-rank-agreement", "Proposition 2.5", 0.0);
    } catch (const InconsistentRank&) {
        add("kernel-rank-agreement", "Proposition 2.5", 1.0);
    }

    {
        const auto [p_range, p_null] = range_null_projections(p, tol);
        add("projection-inverse", "Lemma 2.9(i)",
            rel_residual((p_range - p_null) * sum_minus_i, ident));

        const BlockForm& bf = p.block(tol);
        add("range-projection", "Lemma 2.9(ii)",
            rel_residual(p_range, bf.range_basis * bf.range_basis.adjoint()));
        const ComplexMatrix null_basis = null_space_basis(p.matrix(), tol);
        add("null-projection", "Lemma 2.9(ii)",
            rel_residual(p_null, null_basis * null_basis.adjoint()));
        add("idempotent-recovery", "Lemma 2.9(ii)",
            rel_residual(p_range * (p_range - p_null).inverse(), p.matrix()));
    }
    return rep;
}

}  // namespace idsym
