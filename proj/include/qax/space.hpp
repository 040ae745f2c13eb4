#pragma once

// Periodic lattice stand-in for R^3: exact translation representation,
// covariant position projectors, SU(2) spin representations and the
// Schroedinger-Pauli Hamiltonian on C^2 (x) l^2(lattice).

#include "qax/composition.hpp"
#include "qax/dynamics.hpp"
#include "qax/linalg.hpp"

#include <array>
#include <set>

namespace qax {

using Region = std::set<std::size_t>;

template <class Real = double>
struct Lattice {
    int d = 1;
    int n = 2;
    Real dx = 1;

    Lattice() = default;
    Lattice(int d_, int n_, Real dx_) : d(d_), n(n_), dx(dx_) {
        if (d < 1 || d > 3) throw Error("Lattice: d must be 1, 2 or 3");
        if (n < 2) throw Error("Lattice: n must be >= 2");
        if (!(dx > 0)) throw Error("Lattice: dx must be positive");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int k = 0; k < d; ++k) s *= std::size_t(n);
        return s;
    }

    /// Axis 0 varies slowest.
    std::size_t site_index(const std::vector<int>& coords) const {
        if (int(coords.size()) != d) throw DimensionError("Lattice::site_index: wrong coordinate count");
        std::size_t idx = 0;
        for (int k = 0; k < d; ++k) idx = idx * std::size_t(n) + std::size_t(wrap(coords[std::size_t(k)]));
        return idx;
    }

    std::vector<int> site_coords(std::size_t idx) const {
        if (idx >= size()) throw Error("Lattice::site_coords: site index out of range");
        std::vector<int> c(static_cast<std::size_t>(d));
        for (int k = d; k-- > 0;) {
            c[std::size_t(k)] = int(idx % std::size_t(n));
            idx /= std::size_t(n);
        }
        return c;
    }

    int wrap(int c) const { return ((c % n) + n) % n; }

    Region all_sites() const {
        Region r;
        for (std::size_t i = 0; i < size(); ++i) r.insert(r.end(), i);
        return r;
    }
};

/// Translation vector in units of dx, components reduced modulo n.
class LatticeVector {
  public:
    template <class Real>
    LatticeVector(const Lattice<Real>& lat, std::vector<int> components) : c_(std::move(components)) {
        if (int(c_.size()) != lat.d) throw DimensionError("LatticeVector: wrong component count");
        for (auto& x : c_) x = lat.wrap(x);
    }

    const std::vector<int>& components() const noexcept { return c_; }

    template <class Real>
    LatticeVector plus(const Lattice<Real>& lat, const LatticeVector& o) const {
        std::vector<int> s = c_;
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += o.c_[k];
        return LatticeVector(lat, s);
    }

  private:
    std::vector<int> c_;
};

template <class Real>
std::size_t shift_site(const Lattice<Real>& lat, std::size_t site, const LatticeVector& a) {
    auto c = lat.site_coords(site);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += a.components()[k];
    return lat.site_index(c);
}

/// The automorphism B -> B + a of the site sigma-algebra.
template <class Real>
Region translate_region(const Lattice<Real>& lat, const Region& region, const LatticeVector& a) {
    Region out;
    for (auto s : region) out.insert(shift_site(lat, s, a));
    return out;
}

/// U(a)|x> = |x + a>; a permutation matrix.
template <class Real>
CMatrix<Real> translation_unitary(const Lattice<Real>& lat, const LatticeVector& a) {
    const auto n = Eigen::Index(lat.size());
    CMatrix<Real> u = CMatrix<Real>::Zero(n, n);
    for (std::size_t x = 0; x < lat.size(); ++x) u(Eigen::Index(shift_site(lat, x, a)), Eigen::Index(x)) = 1;
    return u;
}

template <class Real>
CMatrix<Real> position_projector(const Lattice<Real>& lat, const Region& region) {
    const auto n = Eigen::Index(lat.size());
    CMatrix<Real> p = CMatrix<Real>::Zero(n, n);
    for (auto s : region) {
        if (s >= lat.size()) throw Error("position_projector: site index out of range");
        p(Eigen::Index(s), Eigen::Index(s)) = 1;
    }
    return p;
}

/// U(a) P_B U(a)^dagger == P_{B+a}, compared entry for entry.
template <class Real>
bool check_covariance(const Lattice<Real>& lat, const LatticeVector& a, const Region& region) {
    const CMatrix<Real> u = translation_unitary(lat, a);
    const CMatrix<Real> lhs = u * position_projector(lat, region) * u.adjoint();
    return lhs == position_projector(lat, translate_region(lat, region, a));
}

// ---------------------------------------------------------------------------
// SU(2)

template <class Real = double>
struct SpinRep {
    int twice_j = 1;
    CMatrix<Real> jx, jy, jz;

    Real j() const { return Real(twice_j) / 2; }
    Eigen::Index dim() const { return twice_j + 1; }

    CMatrix<Real> casimir() const { return jx * jx + jy * jy + jz * jz; }
};

/// Spin-j representation in the |j, m> basis with m descending; j = twice_j / 2.
template <class Real>
SpinRep<Real> spin_rep(int twice_j) {
    if (twice_j < 1) throw Error("spin_rep: j must be a positive half-integer");
    using C = std::complex<Real>;
    const Real j = Real(twice_j) / 2;
    const Eigen::Index dim = twice_j + 1;
    CMatrix<Real> jp = CMatrix<Real>::Zero(dim, dim);
    CMatrix<Real> jz = CMatrix<Real>::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Real m = j - Real(k);
        jz(k, k) = m;
        // J+ |j, m-1> = sqrt(j(j+1) - m(m-1)) |j, m>
        if (k + 1 < dim) jp(k, k + 1) = std::sqrt(j * (j + 1) - m * (m - 1));
    }
    const CMatrix<Real> jm = jp.adjoint();
    SpinRep<Real> rep;
    rep.twice_j = twice_j;
    rep.jx = (jp + jm) * Real(0.5);
    rep.jy = (jp - jm) * C(0, Real(-0.5));
    rep.jz = jz;
    return rep;
}

/// exp(-i theta n.J); the axis is normalized, a zero axis is rejected.
template <class Real>
CMatrix<Real> spin_rotation(const SpinRep<Real>& rep, const std::array<Real, 3>& axis, Real theta) {
    const Real len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (!(len > 0)) throw Error("spin_rotation: zero axis");
    const CMatrix<Real> generator = (axis[0] * rep.jx + axis[1] * rep.jy + axis[2] * rep.jz) / len;
    return exp_minus_i<Real>(generator, theta);
}

template <class Real>
std::array<CMatrix<Real>, 3> pauli_matrices() {
    using C = std::complex<Real>;
    CMatrix<Real> x(2, 2), y(2, 2), z(2, 2);
    x << C(0), C(1), C(1), C(0);
    y << C(0), C(0, -1), C(0, 1), C(0);
    z << C(1), C(0), C(0), C(-1);
    return {x, y, z};
}

/// Periodic nearest-neighbour discrete Laplacian kinetic energy p^2 / 2m.
template <class Real>
CMatrix<Real> kinetic_operator(const Lattice<Real>& lat, Real mass) {
    if (!(mass > 0)) throw Error("kinetic_operator: mass must be positive");
    const auto n = Eigen::Index(lat.size());
    CMatrix<Real> lap = CMatrix<Real>::Zero(n, n);
    for (int axis = 0; axis < lat.d; ++axis) {
        std::vector<int> e(std::size_t(lat.d), 0);
        e[std::size_t(axis)] = 1;
        const CMatrix<Real> fwd = translation_unitary(lat, LatticeVector(lat, e));
        lap += fwd + fwd.adjoint() - Real(2) * identity<Real>(n);
    }
    return lap * (Real(-1) / (Real(2) * mass * lat.dx * lat.dx));
}

/// I_2 (x) p^2/2m - mu (sigma.B) (x) I_space on C^2 (x) l^2(lattice).
template <class Real>
CMatrix<Real> pauli_hamiltonian(const Lattice<Real>& lat, Real mass, const std::array<Real, 3>& field, Real mu) {
    const auto sigma = pauli_matrices<Real>();
    const CMatrix<Real> zeeman = field[0] * sigma[0] + field[1] * sigma[1] + field[2] * sigma[2];
    const auto n = Eigen::Index(lat.size());
    return tensor<Real>(identity<Real>(2), kinetic_operator(lat, mass)) - mu * tensor<Real>(zeeman, identity<Real>(n));
}

}  // namespace qax
