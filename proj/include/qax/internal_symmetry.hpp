#pragma once

// U(1) internal symmetry: integer charge operator, its unitary
// representation, the superselection sectors it generates, and commutation
// checks against the spatial representations on a composite space.

#include "qax/composition.hpp"
#include "qax/linalg.hpp"

#include <map>

namespace qax {

template <class Real = double>
class ChargeOperator {
  public:
    /// Q must be Hermitian and diagonal with integer entries.
    explicit ChargeOperator(const CMatrix<Real>& q, Real tol = Real(1e-10)) {
        require_hermitian<Real>(q, tol, "ChargeOperator");
        CMatrix<Real> off = q;
        off.diagonal().setZero();
        if (max_abs<Real>(off) > tol) throw Error("ChargeOperator: Q must be diagonal in the computational basis");
        for (Eigen::Index i = 0; i < q.rows(); ++i) {
            const Real v = q(i, i).real();
            const Real r = std::round(v);
            if (std::abs(v - r) > tol) throw Error("ChargeOperator: non-integer charge");
            charges_.push_back(long(r));
        }
    }

    static ChargeOperator from_charges(const std::vector<long>& charges) {
        CMatrix<Real> q = CMatrix<Real>::Zero(Eigen::Index(charges.size()), Eigen::Index(charges.size()));
        for (std::size_t i = 0; i < charges.size(); ++i) q(Eigen::Index(i), Eigen::Index(i)) = Real(charges[i]);
        return ChargeOperator(q);
    }

    const std::vector<long>& charges() const noexcept { return charges_; }
    Eigen::Index dim() const noexcept { return Eigen::Index(charges_.size()); }

    CMatrix<Real> matrix() const {
        CMatrix<Real> q = CMatrix<Real>::Zero(dim(), dim());
        for (Eigen::Index i = 0; i < dim(); ++i) q(i, i) = Real(charges_[std::size_t(i)]);
        return q;
    }

  private:
    std::vector<long> charges_;
};

/// Change of basis for a Hermitian integer-spectrum charge given in an
/// arbitrary basis: q_diag = basis^dagger q basis.
template <class Real = double>
struct DiagonalCharge {
    ChargeOperator<Real> charge;
    CMatrix<Real> basis;
};

template <class Real>
DiagonalCharge<Real> diagonalize_charge(const CMatrix<Real>& q, const Tolerances<Real>& tol = {}) {
    require_hermitian<Real>(q, tol.herm, "diagonalize_charge");
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part<Real>(q));
    CMatrix<Real> d = CMatrix<Real>::Zero(q.rows(), q.cols());
    d.diagonal() = es.eigenvalues().template cast<std::complex<Real>>();
    return {ChargeOperator<Real>(d, Real(1e-8)), es.eigenvectors()};
}

/// exp(i tau Q).
template <class Real>
CMatrix<Real> u1_unitary(const ChargeOperator<Real>& q, Real tau) {
    CMatrix<Real> u = CMatrix<Real>::Zero(q.dim(), q.dim());
    for (Eigen::Index i = 0; i < q.dim(); ++i) u(i, i) = std::polar(Real(1), tau * Real(q.charges()[std::size_t(i)]));
    return u;
}

template <class Real = double>
struct Sector {
    long charge = 0;
    std::size_t dim = 0;
    CMatrix<Real> projector;
};

template <class Real = double>
struct SectorDecomposition {
    std::vector<Sector<Real>> sectors;  // ascending charge
};

template <class Real>
SectorDecomposition<Real> sectors(const ChargeOperator<Real>& q) {
    std::map<long, std::vector<Eigen::Index>> by_charge;
    for (Eigen::Index i = 0; i < q.dim(); ++i) by_charge[q.charges()[std::size_t(i)]].push_back(i);
    SectorDecomposition<Real> out;
    for (const auto& [charge, idx] : by_charge) {
        Sector<Real> s{charge, idx.size(), CMatrix<Real>::Zero(q.dim(), q.dim())};
        for (auto i : idx) s.projector(i, i) = 1;
        out.sectors.push_back(std::move(s));
    }
    return out;
}

/// Largest off-sector block entry max |Pi_q A Pi_q'| over q != q'.
template <class Real>
Real superselection_residual(const CMatrix<Real>& a, const SectorDecomposition<Real>& dec) {
    if (dec.sectors.empty() || a.rows() != dec.sectors.front().projector.rows() || a.rows() != a.cols())
        throw DimensionError("check_superselection: dimension mismatch");
    Real worst = 0;
    for (std::size_t i = 0; i < dec.sectors.size(); ++i)
        for (std::size_t j = 0; j < dec.sectors.size(); ++j)
            if (i != j)
                worst = std::max(worst, max_abs<Real>(CMatrix<Real>(dec.sectors[i].projector * a * dec.sectors[j].projector)));
    return worst;
}

template <class Real>
bool check_superselection(const CMatrix<Real>& a, const SectorDecomposition<Real>& dec, Real tol = Real(1e-10)) {
    return superselection_residual(a, dec) <= tol;
}

/// max over tau_k = 2 pi k / points of ||[A, U(tau_k)]||.
template <class Real>
Real u1_commutator_max(const CMatrix<Real>& a, const ChargeOperator<Real>& q, int points = 16) {
    Real worst = 0;
    for (int k = 0; k < points; ++k) {
        const Real tau = Real(2) * Real(EIGEN_PI) * Real(k) / Real(points);
        worst = std::max(worst, commutator_norm<Real>(a, u1_unitary(q, tau)));
    }
    return worst;
}

/// Which tensor factor carries which representation.
struct CompositeLayout {
    CompositeSpace space;
    std::size_t internal = 0;
    std::size_t spin = 1;
    std::size_t position = 2;
};

template <class Real = double>
struct CommutationCheck {
    bool commutes = false;
    Real max_residual = 0;

    explicit operator bool() const noexcept { return commutes; }
};

/// Internal unitary given on the full composite vs. translations (acting on
/// the position factor) and rotations (acting on the spin factor), lifted
/// into the composite.
template <class Real>
CommutationCheck<Real> check_commutes_with_space(const CMatrix<Real>& internal_full, const CompositeLayout& layout,
                                                 const std::vector<CMatrix<Real>>& translations,
                                                 const std::vector<CMatrix<Real>>& rotations, Real tol = Real(1e-12)) {
    const auto total = Eigen::Index(layout.space.total());
    if (internal_full.rows() != total || internal_full.cols() != total)
        throw DimensionError("check_commutes_with_space: operator does not match layout");
    CommutationCheck<Real> out;
    for (const auto& t : translations)
        out.max_residual = std::max(out.max_residual, commutator_norm<Real>(internal_full, embed<Real>(t, layout.space, layout.position)));
    for (const auto& r : rotations)
        out.max_residual = std::max(out.max_residual, commutator_norm<Real>(internal_full, embed<Real>(r, layout.space, layout.spin)));
    out.commutes = out.max_residual <= tol;
    return out;
}

/// Same check with the internal unitary given on its own factor.
template <class Real>
CommutationCheck<Real> check_commutes_with_space_factor(const CMatrix<Real>& internal_factor, const CompositeLayout& layout,
                                                        const std::vector<CMatrix<Real>>& translations,
                                                        const std::vector<CMatrix<Real>>& rotations, Real tol = Real(1e-12)) {
    return check_commutes_with_space<Real>(embed<Real>(internal_factor, layout.space, layout.internal), layout, translations,
                                           rotations, tol);
}

}  // namespace qax
