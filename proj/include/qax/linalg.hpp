#pragma once

// Dense complex operator arithmetic: Hermiticity and positivity checks,
// spectral decomposition, Hermitian functional calculus and the Born rule.
//
// Every operator is an Eigen dense matrix over std::complex<Real>.  Functions
// are templated on the real scalar so the same kernels run in float, double or
// long double; the default tolerances are tuned for double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qax {

template <class Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Operator = CMatrix<double>;
using StateVector = CVector<double>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class NotHermitianError : public Error {
  public:
    using Error::Error;
};

class ValidationError : public Error {
  public:
    ValidationError(const std::string& what, std::vector<std::string> violations)
        : Error(what + join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) out += "; " + s;
        return out;
    }
    std::vector<std::string> violations_;
};

template <class Real = double>
struct Tolerances {
    Real trace = Real(1e-10);
    Real herm = Real(1e-10);
    Real psd = Real(1e-10);
    Real recon = Real(1e-9);
    Real degen = Real(1e-8);
    Real unitary = Real(1e-9);
    Real prob = Real(1e-12);
};

template <class Real>
void require_square(const CMatrix<Real>& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        std::ostringstream os;
        os << what << ": operator must be square with dim >= 1, got " << a.rows() << "x" << a.cols();
        throw DimensionError(os.str());
    }
}

template <class Real>
void require_same_dim(const CMatrix<Real>& a, const CMatrix<Real>& b, const char* what) {
    require_square(a, what);
    require_square(b, what);
    if (a.rows() != b.rows()) {
        std::ostringstream os;
        os << what << ": dimension mismatch " << a.rows() << " vs " << b.rows();
        throw DimensionError(os.str());
    }
}

template <class Real>
CMatrix<Real> identity(Eigen::Index dim) {
    return CMatrix<Real>::Identity(dim, dim);
}

template <class Real>
CMatrix<Real> adjoint(const CMatrix<Real>& a) {
    return a.adjoint();
}

template <class Real>
std::complex<Real> trace(const CMatrix<Real>& a) {
    require_square(a, "trace");
    return a.trace();
}

/// Largest singular value.
template <class Real>
Real operator_norm(const CMatrix<Real>& a) {
    if (a.size() == 0) return Real(0);
    Eigen::JacobiSVD<CMatrix<Real>> svd(a);
    return svd.singularValues()(0);
}

/// Largest absolute entry; used for cheap exactness checks.
template <class Real>
Real max_abs(const CMatrix<Real>& a) {
    return a.size() == 0 ? Real(0) : a.cwiseAbs().maxCoeff();
}

template <class Real>
Real hermiticity_residual(const CMatrix<Real>& a) {
    return max_abs<Real>(a - a.adjoint());
}

template <class Real>
bool is_hermitian(const CMatrix<Real>& a, Real tol) {
    return a.rows() == a.cols() && hermiticity_residual(a) <= tol;
}

template <class Real>
void require_hermitian(const CMatrix<Real>& a, Real tol, const char* what) {
    require_square(a, what);
    const Real r = hermiticity_residual(a);
    if (r > tol) {
        std::ostringstream os;
        os << what << ": operator is not Hermitian (residual " << r << " > " << tol << ")";
        throw NotHermitianError(os.str());
    }
}

/// 0.5 (A + A^dagger)
template <class Real>
CMatrix<Real> hermitian_part(const CMatrix<Real>& a) {
    return (a + a.adjoint()) * Real(0.5);
}

template <class Real>
Real commutator_norm(const CMatrix<Real>& a, const CMatrix<Real>& b) {
    require_same_dim(a, b, "commutator_norm");
    return operator_norm<Real>(a * b - b * a);
}

/// Eigen-decomposition of the Hermitian part with f applied to the spectrum.
template <class Real, class F>
CMatrix<Real> hermitian_apply(const CMatrix<Real>& a, F&& f) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part(a));
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    CVector<Real> fv(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) fv(i) = std::complex<Real>(f(vals(i)));
    return vecs * fv.asDiagonal() * vecs.adjoint();
}

template <class Real>
Real min_eigenvalue(const CMatrix<Real>& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

/// Positive square root.  Eigenvalues in [-tol_psd, 0) are clipped to zero.
template <class Real>
CMatrix<Real> hermitian_sqrt(const CMatrix<Real>& a, const Tolerances<Real>& tol = {}) {
    require_hermitian(a, tol.herm, "hermitian_sqrt");
    const Real lo = min_eigenvalue(a);
    if (lo < -tol.psd) {
        std::ostringstream os;
        os << "hermitian_sqrt: eigenvalue " << lo << " below -tol_psd";
        throw Error(os.str());
    }
    return hermitian_apply(a, [](Real x) { return std::sqrt(std::max(x, Real(0))); });
}

/// Tr(AB) without forming the product.
template <class Real>
std::complex<Real> trace_product(const CMatrix<Real>& a, const CMatrix<Real>& b) {
    require_same_dim(a, b, "trace_product");
    return (a.array() * b.transpose().array()).sum();
}

// ---------------------------------------------------------------------------
// Density operators

template <class Real>
class DensityOperator;

template <class Real>
struct DensityValidation {
    std::optional<DensityOperator<Real>> state;
    std::vector<std::string> violations;

    bool ok() const noexcept { return state.has_value(); }
};

template <class Real>
DensityValidation<Real> validate_density(const CMatrix<Real>& op, const Tolerances<Real>& tol = {});

/// A positive unit-trace operator.  Instances only come out of validation.
template <class Real = double>
class DensityOperator {
  public:
    const CMatrix<Real>& op() const noexcept { return op_; }
    Eigen::Index dim() const noexcept { return op_.rows(); }
    Real purity() const { return trace_product<Real>(op_, op_).real(); }

    static DensityOperator maximally_mixed(Eigen::Index dim) {
        return DensityOperator(identity<Real>(dim) / Real(dim));
    }

    /// |psi><psi| for a normalized copy of psi.
    static DensityOperator pure(const CVector<Real>& psi) {
        const Real n = psi.norm();
        if (psi.size() < 1 || !(n > Real(0))) throw Error("DensityOperator::pure: zero vector");
        const CVector<Real> u = psi / n;
        return DensityOperator(u * u.adjoint());
    }

  private:
    explicit DensityOperator(CMatrix<Real> op) : op_(std::move(op)) {}
    friend DensityValidation<Real> validate_density<Real>(const CMatrix<Real>&, const Tolerances<Real>&);

    CMatrix<Real> op_;
};

template <class Real>
DensityValidation<Real> validate_density(const CMatrix<Real>& op, const Tolerances<Real>& tol) {
    DensityValidation<Real> out;
    if (op.rows() != op.cols() || op.rows() < 1) {
        out.violations.push_back("not a square operator with dim >= 1");
        return out;
    }
    std::ostringstream os;
    const std::complex<Real> tr = op.trace();
    if (std::abs(tr - std::complex<Real>(1)) > tol.trace) {
        os << "trace " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag()) << "i != 1";
        out.violations.push_back(os.str());
        os.str("");
    }
    const Real herm = hermiticity_residual(op);
    if (herm > tol.herm) {
        os << "non-Hermitian (residual " << herm << ")";
        out.violations.push_back(os.str());
        os.str("");
    }
    const Real lo = min_eigenvalue(op);
    if (lo < -tol.psd) {
        os << "negative eigenvalue " << lo;
        out.violations.push_back(os.str());
    }
    if (out.violations.empty()) out.state = DensityOperator<Real>(op);
    return out;
}

/// Throwing form of validate_density.
template <class Real>
DensityOperator<Real> make_density(const CMatrix<Real>& op, const Tolerances<Real>& tol = {}) {
    auto v = validate_density(op, tol);
    if (!v.ok()) throw ValidationError("invalid density operator", std::move(v.violations));
    return std::move(*v.state);
}

/// Born rule: Re Tr(rho A).
template <class Real>
Real expectation(const DensityOperator<Real>& rho, const CMatrix<Real>& a, const Tolerances<Real>& tol = {}) {
    require_same_dim(rho.op(), a, "expectation");
    require_hermitian(a, tol.herm, "expectation");
    return trace_product<Real>(rho.op(), a).real();
}

// ---------------------------------------------------------------------------
// Spectral decomposition

template <class Real = double>
struct SpectralDecomposition {
    RVector<Real> eigenvalues;               // distinct, ascending
    std::vector<CMatrix<Real>> projectors;   // one per eigenvalue

    std::size_t size() const noexcept { return projectors.size(); }

    CMatrix<Real> reconstruct() const {
        CMatrix<Real> out = CMatrix<Real>::Zero(projectors.front().rows(), projectors.front().cols());
        for (std::size_t i = 0; i < projectors.size(); ++i) out += eigenvalues(Eigen::Index(i)) * projectors[i];
        return out;
    }
};

/// Eigenvalues closer than tol.degen (chained) share one projector; the
/// reported eigenvalue is the mean of the merged cluster.
template <class Real>
SpectralDecomposition<Real> spectral(const CMatrix<Real>& a, const Tolerances<Real>& tol = {}) {
    require_hermitian(a, tol.herm, "spectral");
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part(a));
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    SpectralDecomposition<Real> out;
    std::vector<Real> means;
    Eigen::Index begin = 0;
    const Eigen::Index n = vals.size();
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i < n && vals(i) - vals(i - 1) < tol.degen) continue;
        const auto block = vecs.middleCols(begin, i - begin);
        out.projectors.push_back(block * block.adjoint());
        means.push_back(vals.segment(begin, i - begin).mean());
        begin = i;
    }
    out.eigenvalues = Eigen::Map<const RVector<Real>>(means.data(), Eigen::Index(means.size()));
    return out;
}

}  // namespace qax
