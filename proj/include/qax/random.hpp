#pragma once

// Seeded random operators for property checks.

#include "qax/linalg.hpp"

#include <random>
#include <vector>

namespace qax {

template <class Real, class Rng>
CMatrix<Real> random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<Real> normal(0, 1);
    CMatrix<Real> g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = {normal(rng), normal(rng)};
    return g;
}

template <class Real, class Rng>
CMatrix<Real> random_hermitian(Eigen::Index dim, Rng& rng) {
    return hermitian_part<Real>(random_ginibre<Real>(dim, dim, rng));
}

template <class Real, class Rng>
CVector<Real> random_state_vector(Eigen::Index dim, Rng& rng) {
    CVector<Real> v = random_ginibre<Real>(dim, 1, rng);
    return v / v.norm();
}

/// G G^dagger / Tr; full rank almost surely.
template <class Real, class Rng>
DensityOperator<Real> random_density(Eigen::Index dim, Rng& rng) {
    const CMatrix<Real> g = random_ginibre<Real>(dim, dim, rng);
    CMatrix<Real> rho = g * g.adjoint();
    rho /= rho.trace().real();
    return make_density<Real>(hermitian_part<Real>(rho));
}

template <class Real, class Rng>
CMatrix<Real> random_unitary(Eigen::Index dim, Rng& rng) {
    Eigen::HouseholderQR<CMatrix<Real>> qr(random_ginibre<Real>(dim, dim, rng));
    return qr.householderQ() * CMatrix<Real>::Identity(dim, dim);
}

/// Effects S^{-1/2} S_i S^{-1/2} with S = sum_i S_i for random positive S_i.
template <class Real, class Rng>
std::vector<CMatrix<Real>> random_povm_effects(Eigen::Index dim, std::size_t outcomes, Rng& rng) {
    std::vector<CMatrix<Real>> parts;
    CMatrix<Real> total = CMatrix<Real>::Zero(dim, dim);
    for (std::size_t i = 0; i < outcomes; ++i) {
        const CMatrix<Real> g = random_ginibre<Real>(dim, dim, rng);
        parts.push_back(g * g.adjoint());
        total += parts.back();
    }
    const CMatrix<Real> inv_sqrt = hermitian_apply<Real>(total, [](Real x) { return Real(1) / std::sqrt(x); });
    for (auto& p : parts) p = hermitian_part<Real>(inv_sqrt * p * inv_sqrt);
    return parts;
}

}  // namespace qax
