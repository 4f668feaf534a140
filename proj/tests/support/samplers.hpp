#pragma once

// Deterministic instance and parameter samplers shared by the unit and
// acceptance suites.

#include <cstdint>
#include <vector>

#include "idsym/idsym.hpp"

namespace sampling {

using idsym::ComplexMatrix;
using idsym::Idempotent;
using idsym::Index;
using idsym::ToleranceConfig;

// Symmetry built on the eigenvectors of a Hermitian PSD matrix with random
// +/-1 signs; commutes with every function of the input by construction.
inline ComplexMatrix random_spectral_symmetry(const ComplexMatrix& k, idsym::Rng& rng) {
    const idsym::HermitianEigen eig = idsym::hermitian_eigen(k);
    ComplexMatrix j = ComplexMatrix::Zero(k.rows(), k.cols());
    for (Index i = 0; i < k.rows(); ++i) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        j += sign * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
    return j;
}

// Spectral symmetry with a caller-fixed sign pattern (bit i of `signs` set
// means -1 on the i-th eigenvector).
inline ComplexMatrix sign_pattern_symmetry(const ComplexMatrix& k, std::uint64_t signs) {
    const idsym::HermitianEigen eig = idsym::hermitian_eigen(k);
    ComplexMatrix j = ComplexMatrix::Zero(k.rows(), k.cols());
    for (Index i = 0; i < k.rows(); ++i) {
        const double sign = (signs >> i) & 1u ? -1.0 : 1.0;
        j += sign * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
    return j;
}

// Admissible parameter for the I - P family: U = V J1 with V the completed
// polar unitary of P1 and J1 a spectral symmetry of P1* P1.
inline idsym::GammaParam random_gamma_param(const Idempotent& p, idsym::Rng& rng,
                                            const ToleranceConfig& tol = {}) {
    const idsym::BlockForm& bf = p.block(tol);
    const ComplexMatrix v =
        *idsym::polar_decompose(bf.P1, tol, /*complete=*/true).unitary_completion;
    return idsym::GammaParam{v * random_spectral_symmetry(bf.P1.adjoint() * bf.P1, rng)};
}

// Admissible parameter for the I - P* family: U = V J1 with V the completed
// polar unitary of P1* and J1 a spectral symmetry of P1 P1*.
inline idsym::DeltaParam random_delta_param(const Idempotent& p, idsym::Rng& rng,
                                            const ToleranceConfig& tol = {}) {
    const idsym::BlockForm& bf = p.block(tol);
    const ComplexMatrix v =
        *idsym::polar_decompose(bf.P1.adjoint(), tol, /*complete=*/true).unitary_completion;
    return idsym::DeltaParam{v * random_spectral_symmetry(bf.P1 * bf.P1.adjoint(), rng)};
}

// Random subprojection of the projection onto N(P1) with the requested rank
// (capped at dim N(P1)); rank 0 gives E = 0.
inline idsym::PositiveParam random_positive_param(const Idempotent& p, Index rank,
                                                  idsym::Rng& rng,
                                                  const ToleranceConfig& tol = {}) {
    const idsym::BlockForm& bf = p.block(tol);
    const Index c = p.dim() - bf.r;
    const ComplexMatrix null_basis = idsym::null_space_basis(bf.P1, tol);
    const Index avail = null_basis.cols();
    rank = std::min(rank, avail);
    if (rank == 0) return idsym::PositiveParam{ComplexMatrix::Zero(c, c)};
    const ComplexMatrix mix = idsym::random_unitary(avail, rng);
    const ComplexMatrix cols = null_basis * mix.leftCols(rank);
    return idsym::PositiveParam{cols * cols.adjoint()};
}

// Idempotent whose corner block has at least `nullity` zero columns, so
// dim N(P1) >= nullity; assembled in a Haar-random basis.
inline Idempotent deficient_idempotent(Index n, Index r, Index nullity, double norm_cap,
                                       std::uint64_t seed, const ToleranceConfig& tol = {}) {
    idsym::Rng rng(seed);
    const ComplexMatrix q = idsym::random_unitary(n, rng);
    ComplexMatrix p1 = ComplexMatrix::Zero(r, n - r);
    if (n - r - nullity > 0) {
        ComplexMatrix g = idsym::random_gaussian(r, n - r - nullity, rng);
        const double nrm = idsym::spectral_norm(g);
        if (nrm > norm_cap) g *= norm_cap / nrm;
        p1.leftCols(n - r - nullity) = g;
    }
    ComplexMatrix block = ComplexMatrix::Zero(n, n);
    block.topLeftCorner(r, r) = ComplexMatrix::Identity(r, r);
    block.topRightCorner(r, n - r) = p1;
    return Idempotent::validate(q * block * q.adjoint(), tol);
}

struct CorpusSpec {
    Index n;
    Index r;
    std::uint64_t seed;
};

// 200 deterministic instances with n in {2,...,32} and ranks sweeping the
// whole range 0..n, including both degenerate ends.
inline std::vector<CorpusSpec> corpus200() {
    std::vector<CorpusSpec> out;
    out.reserve(200);
    for (int i = 0; i < 200; ++i) {
        const Index n = 2 + static_cast<Index>(i % 31);
        const Index r = static_cast<Index>((i * 13 + i / 31) % (n + 1));
        out.push_back({n, r, 40000u + static_cast<std::uint64_t>(i)});
    }
    return out;
}

// Balanced instances (n = 2r) for the families that require them.
inline std::vector<CorpusSpec> balanced_corpus(int count, std::uint64_t seed_base) {
    std::vector<CorpusSpec> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const Index r = 1 + static_cast<Index>(i % 16);
        out.push_back({2 * r, r, seed_base + static_cast<std::uint64_t>(i)});
    }
    return out;
}

}  // namespace sampling
