#pragma once

// Outcome spaces, POVMs and instruments (state transformers).
//
// The outcome sigma-algebra is the power set of a finite label list; an event
// is any set of labels.  Instruments are stored as one Kraus list per outcome,
// so every map is completely positive by construction.

#include "qax/linalg.hpp"

#include <charconv>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qax {

class OutcomeSpace {
  public:
    OutcomeSpace() = default;
    explicit OutcomeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) throw Error("OutcomeSpace: no labels");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second) throw Error("OutcomeSpace: duplicate label '" + labels_[i] + "'");
        }
    }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw Error("unknown outcome label '" + label + "'");
        return it->second;
    }

    std::vector<std::size_t> event_indices(const std::set<std::string>& event) const {
        std::vector<std::size_t> out;
        for (const auto& l : event) {
            if (!contains(l)) throw Error("event is not a subset of the outcome space: '" + l + "'");
            out.push_back(index_of(l));
        }
        return out;
    }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Shortest round-trip decimal form of an outcome value.
/// Twelve significant digits, so eigenvalue noise does not leak into labels.
inline std::string format_label(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    if (std::string_view(buf, std::size_t(res.ptr - buf)) == "-0") return "0";
    return std::string(buf, res.ptr);
}

template <class Real = double>
struct Povm {
    OutcomeSpace space;
    std::vector<CMatrix<Real>> effects;

    Eigen::Index dim() const { return effects.front().rows(); }
    const CMatrix<Real>& effect(const std::string& label) const { return effects[space.index_of(label)]; }

    /// E_B = sum over labels in B.
    CMatrix<Real> event_effect(const std::set<std::string>& event) const {
        CMatrix<Real> out = CMatrix<Real>::Zero(dim(), dim());
        for (auto i : space.event_indices(event)) out += effects[i];
        return out;
    }
};

template <class Real>
Povm<Real> make_povm(OutcomeSpace space, std::vector<CMatrix<Real>> effects, const Tolerances<Real>& tol = {}) {
    if (effects.size() != space.size()) throw Error("make_povm: one effect per label required");
    std::vector<std::string> bad;
    const Eigen::Index dim = effects.front().rows();
    CMatrix<Real> total = CMatrix<Real>::Zero(dim, dim);
    for (std::size_t i = 0; i < effects.size(); ++i) {
        const auto& e = effects[i];
        if (e.rows() != dim || e.cols() != dim) throw DimensionError("make_povm: effects differ in dimension");
        const auto& label = space.labels()[i];
        if (!is_hermitian<Real>(e, tol.herm)) {
            bad.push_back("effect '" + label + "' not Hermitian");
            continue;
        }
        Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part<Real>(e), Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(0) < -tol.psd || es.eigenvalues()(dim - 1) > 1 + tol.psd)
            bad.push_back("effect '" + label + "' has eigenvalues outside [0, 1]");
        total += e;
    }
    if (bad.empty() && max_abs<Real>(total - identity<Real>(dim)) > tol.herm) bad.push_back("effects do not sum to identity");
    if (!bad.empty()) throw ValidationError("invalid POVM", std::move(bad));
    return {std::move(space), std::move(effects)};
}

template <class Real = double>
struct Instrument {
    OutcomeSpace space;
    std::vector<std::vector<CMatrix<Real>>> kraus;

    Eigen::Index dim() const { return kraus.front().front().cols(); }

    /// Gamma_i(rho) = sum_k K rho K^dagger.  Accepts any operator, so linearity
    /// can be checked on non-normalized inputs.
    CMatrix<Real> map(std::size_t outcome, const CMatrix<Real>& rho) const {
        CMatrix<Real> out = CMatrix<Real>::Zero(rho.rows(), rho.cols());
        for (const auto& k : kraus[outcome]) out += k * rho * k.adjoint();
        return out;
    }

    /// sum_k K^dagger K for one outcome.
    CMatrix<Real> effect(std::size_t outcome) const {
        CMatrix<Real> out = CMatrix<Real>::Zero(dim(), dim());
        for (const auto& k : kraus[outcome]) out += k.adjoint() * k;
        return out;
    }
};

template <class Real>
Instrument<Real> make_instrument(OutcomeSpace space, std::vector<std::vector<CMatrix<Real>>> kraus,
                                 const Tolerances<Real>& tol = {}) {
    if (kraus.size() != space.size()) throw Error("make_instrument: one Kraus list per label required");
    Instrument<Real> ins{std::move(space), std::move(kraus)};
    std::vector<std::string> bad;
    for (const auto& list : ins.kraus) {
        if (list.empty()) throw Error("make_instrument: empty Kraus list");
        for (const auto& k : list)
            if (k.rows() != ins.dim() || k.cols() != ins.dim()) throw DimensionError("make_instrument: Kraus operators differ in dimension");
    }
    CMatrix<Real> total = CMatrix<Real>::Zero(ins.dim(), ins.dim());
    for (std::size_t i = 0; i < ins.kraus.size(); ++i) {
        const CMatrix<Real> e = ins.effect(i);
        Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part<Real>(e), Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(ins.dim() - 1) > 1 + tol.psd)
            bad.push_back("map '" + ins.space.labels()[i] + "' increases trace");
        total += e;
    }
    if (max_abs<Real>(total - identity<Real>(ins.dim())) > tol.herm) bad.push_back("total map is not trace preserving");
    if (!bad.empty()) throw ValidationError("invalid instrument", std::move(bad));
    return ins;
}

/// Projection-valued measure of a Hermitian observable; one label per
/// distinct eigenvalue.
template <class Real>
Povm<Real> pvm_from_observable(const CMatrix<Real>& a, const Tolerances<Real>& tol = {}) {
    const auto sd = spectral<Real>(a, tol);
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) labels.push_back(format_label(double(sd.eigenvalues(i))));
    return make_povm<Real>(OutcomeSpace(std::move(labels)), sd.projectors, tol);
}

/// Lueders instrument: Kraus operator E for projective effects, sqrt(E) otherwise.
template <class Real>
Instrument<Real> luders_instrument(const Povm<Real>& p, const Tolerances<Real>& tol = {}) {
    std::vector<std::vector<CMatrix<Real>>> kraus;
    for (const auto& e : p.effects) {
        const bool projector = max_abs<Real>(CMatrix<Real>(e * e) - e) <= tol.herm;
        kraus.push_back({projector ? e : hermitian_sqrt<Real>(e, tol)});
    }
    return make_instrument<Real>(p.space, std::move(kraus), tol);
}

template <class Real = double>
struct MeasurementOutcome {
    Real probability = 0;
    std::optional<DensityOperator<Real>> post_state;
};

namespace detail {

template <class Real>
MeasurementOutcome<Real> condition(const CMatrix<Real>& unnormalized, const Tolerances<Real>& tol) {
    MeasurementOutcome<Real> out;
    const Real p = unnormalized.trace().real();
    out.probability = std::clamp(p, Real(0), Real(1));
    if (p > tol.prob) {
        // Division by p magnifies round-off; the positivity slack scales with it.
        Tolerances<Real> scaled = tol;
        scaled.psd = tol.psd / std::min(p, Real(1));
        out.post_state = make_density<Real>(CMatrix<Real>(hermitian_part<Real>(unnormalized) / p), scaled);
    }
    return out;
}

}  // namespace detail

template <class Real>
MeasurementOutcome<Real> apply(const Instrument<Real>& ins, const std::string& label, const DensityOperator<Real>& rho,
                               const Tolerances<Real>& tol = {}) {
    const std::size_t i = ins.space.index_of(label);
    if (rho.dim() != ins.dim()) throw DimensionError("apply: state and instrument dimensions differ");
    return detail::condition<Real>(ins.map(i, rho.op()), tol);
}

/// Gamma_B = sum of Gamma_i over labels in B.
template <class Real>
MeasurementOutcome<Real> apply_event(const Instrument<Real>& ins, const std::set<std::string>& event,
                                     const DensityOperator<Real>& rho, const Tolerances<Real>& tol = {}) {
    const auto idx = ins.space.event_indices(event);
    if (rho.dim() != ins.dim()) throw DimensionError("apply_event: state and instrument dimensions differ");
    CMatrix<Real> acc = CMatrix<Real>::Zero(rho.dim(), rho.dim());
    for (auto i : idx) acc += ins.map(i, rho.op());
    return detail::condition<Real>(acc, tol);
}

/// Outcome probabilities Tr(E_i rho) in label order.
template <class Real>
std::vector<Real> probabilities(const Povm<Real>& p, const DensityOperator<Real>& rho) {
    if (rho.dim() != p.dim()) throw DimensionError("probabilities: dimension mismatch");
    std::vector<Real> out;
    for (const auto& e : p.effects) out.push_back(trace_product<Real>(rho.op(), e).real());
    return out;
}

}  // namespace qax
