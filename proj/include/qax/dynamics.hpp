#pragma once

// Unitary propagators for i dU/dt = H(t) U in units with hbar = 1.

#include "qax/linalg.hpp"

#include <functional>
#include <string>

namespace qax {

template <class Real = double>
class Hamiltonian {
  public:
    using Sampler = std::function<CMatrix<Real>(Real)>;

    static Hamiltonian constant(CMatrix<Real> h, const Tolerances<Real>& tol = {}) {
        require_hermitian<Real>(h, tol.herm, "Hamiltonian::constant");
        Hamiltonian out;
        out.dim_ = h.rows();
        out.constant_ = std::move(h);
        return out;
    }

    /// H(t) is assumed piecewise continuous; `note` records the smoothness
    /// the caller vouches for.
    static Hamiltonian time_dependent(Sampler sampler, Eigen::Index dim, std::string note = "piecewise continuous") {
        if (!sampler) throw Error("Hamiltonian::time_dependent: empty sampler");
        Hamiltonian out;
        out.dim_ = dim;
        out.sampler_ = std::move(sampler);
        out.note_ = std::move(note);
        return out;
    }

    bool is_constant() const noexcept { return !sampler_; }
    Eigen::Index dim() const noexcept { return dim_; }
    const std::string& smoothness_note() const noexcept { return note_; }

    CMatrix<Real> at(Real t, const Tolerances<Real>& tol = {}) const {
        if (is_constant()) return constant_;
        CMatrix<Real> h = sampler_(t);
        if (h.rows() != dim_) throw DimensionError("Hamiltonian sample has wrong dimension");
        require_hermitian<Real>(h, tol.herm, "Hamiltonian sample");
        return h;
    }

  private:
    Hamiltonian() = default;

    Eigen::Index dim_ = 0;
    CMatrix<Real> constant_;
    Sampler sampler_;
    std::string note_;
};

template <class Real = double>
struct Propagator {
    CMatrix<Real> u;
    Real t0 = 0;
    Real t1 = 0;
};

template <class Real>
Real unitarity_residual(const CMatrix<Real>& u) {
    return operator_norm<Real>(CMatrix<Real>(u.adjoint() * u - identity<Real>(u.rows())));
}

/// exp(-i H t) from the eigen-decomposition of H.
template <class Real>
CMatrix<Real> exp_minus_i(const CMatrix<Real>& h, Real t) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part<Real>(h));
    const auto& vals = es.eigenvalues();
    CVector<Real> phases(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) phases(i) = std::polar(Real(1), -vals(i) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

template <class Real>
Propagator<Real> propagator_const(const Hamiltonian<Real>& h, Real t, const Tolerances<Real>& tol = {}) {
    if (!h.is_constant()) throw Error("propagator_const: Hamiltonian is time dependent");
    return {exp_minus_i<Real>(h.at(0, tol), t), Real(0), t};
}

template <class Real>
Propagator<Real> propagator_const(const CMatrix<Real>& h, Real t, const Tolerances<Real>& tol = {}) {
    return propagator_const<Real>(Hamiltonian<Real>::constant(h, tol), t, tol);
}

/// Midpoint exponential product, later factors multiplied on the left.
/// Second order in the step for piecewise smooth H(t).
template <class Real>
Propagator<Real> propagator_td(const Hamiltonian<Real>& h, Real t0, Real t1, long steps, const Tolerances<Real>& tol = {}) {
    if (steps < 1) throw Error("propagator_td: steps must be >= 1");
    const Real dt = (t1 - t0) / Real(steps);
    CMatrix<Real> u = identity<Real>(h.dim());
    for (long k = 0; k < steps; ++k) {
        const Real mid = t0 + (Real(k) + Real(0.5)) * dt;
        u = exp_minus_i<Real>(h.at(mid, tol), dt) * u;
    }
    return {std::move(u), t0, t1};
}

template <class Real>
DensityOperator<Real> evolve(const DensityOperator<Real>& rho, const Propagator<Real>& p, const Tolerances<Real>& tol = {}) {
    require_same_dim<Real>(rho.op(), p.u, "evolve");
    return make_density<Real>(hermitian_part<Real>(CMatrix<Real>(p.u * rho.op() * p.u.adjoint())), tol);
}

template <class Real>
CVector<Real> evolve_vector(const CVector<Real>& psi, const Propagator<Real>& p, const Tolerances<Real>& tol = {}) {
    if (psi.size() != p.u.cols()) throw DimensionError("evolve_vector: dimension mismatch");
    if (std::abs(psi.norm() - Real(1)) > tol.trace) throw Error("evolve_vector: state is not normalized");
    return p.u * psi;
}

}  // namespace qax
