#pragma once

// Tensor products, partial traces and exchange symmetry.
//
// Index convention (used throughout the library): a composite basis state
// (i_1, ..., i_k) maps to the row-major index with the leftmost factor
// varying slowest, i.e. (i_1, i_2) -> i_1 * dim_2 + i_2.

#include "qax/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace qax {

struct CompositeSpace {
    std::vector<std::size_t> factors;

    explicit CompositeSpace(std::vector<std::size_t> f) : factors(std::move(f)) {
        if (factors.empty()) throw Error("CompositeSpace: no factors");
        for (auto d : factors)
            if (d == 0) throw Error("CompositeSpace: zero-dimensional factor");
    }

    std::size_t total() const {
        return std::accumulate(factors.begin(), factors.end(), std::size_t{1}, std::multiplies<>());
    }
};

template <class Real>
CMatrix<Real> tensor(const CMatrix<Real>& a, const CMatrix<Real>& b) {
    CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <class Real>
CVector<Real> tensor(const CVector<Real>& a, const CVector<Real>& b) {
    CVector<Real> out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// I (x) ... (x) op (x) ... (x) I with op on factor `which`.
template <class Real>
CMatrix<Real> embed(const CMatrix<Real>& op, const CompositeSpace& space, std::size_t which) {
    if (which >= space.factors.size()) throw Error("embed: bad factor index");
    if (std::size_t(op.rows()) != space.factors[which] || op.rows() != op.cols())
        throw DimensionError("embed: operator does not match factor dimension");
    std::size_t before = 1, after = 1;
    for (std::size_t k = 0; k < which; ++k) before *= space.factors[k];
    for (std::size_t k = which + 1; k < space.factors.size(); ++k) after *= space.factors[k];
    return tensor<Real>(tensor<Real>(identity<Real>(Eigen::Index(before)), op), identity<Real>(Eigen::Index(after)));
}

/// Reduced operator on factor `keep` (trace over all others).
template <class Real>
CMatrix<Real> partial_trace_op(const CMatrix<Real>& op, const CompositeSpace& space, std::size_t keep) {
    if (keep >= space.factors.size()) throw Error("partial_trace: bad factor index");
    if (std::size_t(op.rows()) != space.total() || op.rows() != op.cols())
        throw DimensionError("partial_trace: operator does not match composite dimension");
    std::size_t before = 1, after = 1;
    for (std::size_t k = 0; k < keep; ++k) before *= space.factors[k];
    for (std::size_t k = keep + 1; k < space.factors.size(); ++k) after *= space.factors[k];
    const std::size_t dk = space.factors[keep];

    CMatrix<Real> out = CMatrix<Real>::Zero(Eigen::Index(dk), Eigen::Index(dk));
    for (std::size_t x = 0; x < before; ++x)
        for (std::size_t y = 0; y < after; ++y)
            for (std::size_t a = 0; a < dk; ++a)
                for (std::size_t b = 0; b < dk; ++b)
                    out(Eigen::Index(a), Eigen::Index(b)) +=
                        op(Eigen::Index((x * dk + a) * after + y), Eigen::Index((x * dk + b) * after + y));
    return out;
}

template <class Real>
DensityOperator<Real> partial_trace(const DensityOperator<Real>& rho, const CompositeSpace& space, std::size_t keep,
                                    const Tolerances<Real>& tol = {}) {
    return make_density<Real>(hermitian_part<Real>(partial_trace_op<Real>(rho.op(), space, keep)), tol);
}

namespace detail {

inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    return out;
}

inline std::size_t undigits(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + d[k];
    return index;
}

inline int permutation_sign(const std::vector<std::size_t>& perm) {
    int sign = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

inline void check_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
        if (sorted.size() != n || sorted[i] != i) throw Error("not a permutation of the factors");
}

}  // namespace detail

/// Reorders tensor factors: factor k of the input becomes factor perm[k] of
/// the output.  Acts on operators by conjugation with the permutation matrix.
template <class Real>
CMatrix<Real> permute_factors(const CMatrix<Real>& op, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& perm) {
    detail::check_permutation(perm, dims.size());
    const CompositeSpace in(dims);
    if (std::size_t(op.rows()) != in.total() || op.rows() != op.cols())
        throw DimensionError("permute_factors: operator does not match composite dimension");
    std::vector<std::size_t> out_dims(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) out_dims[perm[k]] = dims[k];

    const std::size_t n = in.total();
    std::vector<std::size_t> map(n);
    std::vector<std::size_t> t(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = detail::digits(i, dims);
        for (std::size_t k = 0; k < dims.size(); ++k) t[perm[k]] = s[k];
        map[i] = detail::undigits(t, out_dims);
    }
    CMatrix<Real> out(op.rows(), op.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(Eigen::Index(map[i]), Eigen::Index(map[j])) = op(Eigen::Index(i), Eigen::Index(j));
    return out;
}

/// W_pi on (C^d)^{(x)N}: W_pi |s_1 ... s_N> has s_k in slot perm[k].
template <class Real>
CMatrix<Real> factor_permutation(std::size_t n, std::size_t d, const std::vector<std::size_t>& perm) {
    detail::check_permutation(perm, n);
    const std::vector<std::size_t> dims(n, d);
    const std::size_t total = CompositeSpace(dims).total();
    CMatrix<Real> w = CMatrix<Real>::Zero(Eigen::Index(total), Eigen::Index(total));
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < total; ++i) {
        const auto s = detail::digits(i, dims);
        for (std::size_t k = 0; k < n; ++k) t[perm[k]] = s[k];
        w(Eigen::Index(detail::undigits(t, dims)), Eigen::Index(i)) = 1;
    }
    return w;
}

/// Transposition of factors i and j (zero-based, i < j < n).
template <class Real>
CMatrix<Real> exchange_operator(std::size_t n, std::size_t d, std::size_t i, std::size_t j) {
    if (!(i < j && j < n)) throw Error("exchange_operator: need 0 <= i < j < N");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[j]);
    return factor_permutation<Real>(n, d, perm);
}

enum class Statistics { boson, fermion, distinguishable };

inline constexpr std::size_t max_symmetrizer_dim = 4096;

namespace detail {

inline std::size_t checked_power(std::size_t d, std::size_t n, std::size_t limit) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        total *= d;
        if (total > limit) throw Error("symmetrizer: d^N exceeds the size guard");
    }
    return total;
}

// Visits every permutation of {0..n-1} together with its sign.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        f(perm, permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

template <class Real>
CMatrix<Real> permutation_average(std::size_t n, std::size_t d, bool signed_sum) {
    if (n < 1 || d < 1) throw Error("symmetrizer: need N >= 1 and d >= 1");
    const std::size_t total = checked_power(d, n, max_symmetrizer_dim);
    const std::vector<std::size_t> dims(n, d);
    CMatrix<Real> acc = CMatrix<Real>::Zero(Eigen::Index(total), Eigen::Index(total));
    Real count = 0;
    std::vector<std::size_t> t(n);
    for_each_permutation(n, [&](const std::vector<std::size_t>& perm, int sign) {
        const Real weight = signed_sum ? Real(sign) : Real(1);
        for (std::size_t i = 0; i < total; ++i) {
            const auto s = digits(i, dims);
            for (std::size_t k = 0; k < n; ++k) t[perm[k]] = s[k];
            acc(Eigen::Index(undigits(t, dims)), Eigen::Index(i)) += weight;
        }
        count += 1;
    });
    return acc / count;
}

}  // namespace detail

/// (1/N!) sum_pi W_pi: projector onto the symmetric subspace.
template <class Real>
CMatrix<Real> symmetrizer(std::size_t n, std::size_t d) {
    return detail::permutation_average<Real>(n, d, false);
}

/// (1/N!) sum_pi sgn(pi) W_pi: projector onto the antisymmetric subspace.
template <class Real>
CMatrix<Real> antisymmetrizer(std::size_t n, std::size_t d) {
    return detail::permutation_average<Real>(n, d, true);
}

/// Rank of a projector as its rounded trace.
template <class Real>
long projector_rank(const CMatrix<Real>& p) {
    return std::lround(double(p.trace().real()));
}

/// Trace of the (anti)symmetrizer, accumulated entry by entry over the same
/// permutation sum but without storing the matrix.  Reaches N up to 8, where
/// the dense projector would not fit.
inline long exchange_projector_trace(Statistics kind, std::size_t n, std::size_t d) {
    if (kind == Statistics::distinguishable) return long(detail::checked_power(d, n, ~std::size_t{0}));
    if (n < 1 || d < 1 || n > 8) throw Error("exchange_projector_trace: need 1 <= N <= 8, d >= 1");
    const std::size_t total = detail::checked_power(d, n, max_symmetrizer_dim);
    const std::vector<std::size_t> dims(n, d);
    long long acc = 0;
    long long count = 0;
    detail::for_each_permutation(n, [&](const std::vector<std::size_t>& perm, int sign) {
        long long fixed = 0;
        for (std::size_t i = 0; i < total; ++i) {
            const auto s = detail::digits(i, dims);
            bool same = true;
            for (std::size_t k = 0; k < n && same; ++k) same = s[perm[k]] == s[k];
            fixed += same;
        }
        acc += (kind == Statistics::fermion ? sign : 1) * fixed;
        ++count;
    });
    return long(acc / count);
}

struct ExchangeSymmetry {
    Statistics kind = Statistics::distinguishable;
    std::size_t n = 1;
    std::size_t d = 1;

    /// Projector onto the physical subspace; identity for distinguishable particles.
    template <class Real = double>
    CMatrix<Real> projector() const {
        switch (kind) {
        case Statistics::boson: return symmetrizer<Real>(n, d);
        case Statistics::fermion: return antisymmetrizer<Real>(n, d);
        default: return identity<Real>(Eigen::Index(detail::checked_power(d, n, max_symmetrizer_dim)));
        }
    }

    /// Bosons pair with integer spin, fermions with half-integer spin.
    bool consistent_with_spin(int twice_j) const {
        if (kind == Statistics::distinguishable) return true;
        return (kind == Statistics::fermion) == (twice_j % 2 != 0);
    }
};

}  // namespace qax
