#include "qax/bell.hpp"

#include "qax/composition.hpp"

#include <algorithm>
#include <cmath>

namespace qax::bell {

namespace {

constexpr double two_pi = 2.0 * EIGEN_PI;

void require_window(const Lattice<double>& lat, const Region& w) {
    if (!w.empty() && *w.rbegin() >= lat.size()) throw Error("detector window contains a site outside the lattice");
}

double periodic_offset(int a, int b, int n) {
    int d = ((a - b) % n + n) % n;
    if (d > n / 2) d -= n;
    return double(d);
}

}  // namespace

DensityOperator<double> singlet() {
    StateVector psi = StateVector::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return DensityOperator<double>::pure(psi);
}

StateVector gaussian_packet(const Lattice<double>& lat, double width, const std::vector<int>& center) {
    if (!(width > 0)) throw Error("gaussian_packet: width must be positive");
    if (int(center.size()) != lat.d) throw DimensionError("gaussian_packet: center has wrong dimension");
    StateVector psi(Eigen::Index(lat.size()));
    for (std::size_t s = 0; s < lat.size(); ++s) {
        const auto c = lat.site_coords(s);
        double r2 = 0;
        for (int k = 0; k < lat.d; ++k) {
            const double off = periodic_offset(c[std::size_t(k)], center[std::size_t(k)], lat.n) * lat.dx;
            r2 += off * off;
        }
        psi(Eigen::Index(s)) = std::exp(-r2 / (4 * width * width));
    }
    return psi / psi.norm();
}

TwoParticleState singlet_gaussian_state(const Lattice<double>& lat, double width, const std::vector<int>& center1,
                                        const std::vector<int>& center2) {
    return {singlet(), gaussian_packet(lat, width, center1), gaussian_packet(lat, width, center2)};
}

Operator spin_along(double phi) {
    const auto sigma = pauli_matrices<double>();
    return std::cos(phi) * sigma[0] + std::sin(phi) * sigma[1];
}

Operator localized_observable(const ParticleSpace& ps, const DetectorConfig& det) {
    require_window(ps.lattice, det.window);
    return tensor<double>(spin_along(det.phi), position_projector(ps.lattice, det.window));
}

double capture_probability(const StateVector& packet, const Region& window) {
    double g = 0;
    for (auto s : window) {
        if (s >= std::size_t(packet.size())) throw Error("capture_probability: site outside the lattice");
        g += std::norm(packet(Eigen::Index(s)));
    }
    return g;
}

double spin_correlation(const DensityOperator<double>& spin_state, double phi_a, double phi_b) {
    if (spin_state.dim() != 4) throw DimensionError("spin_correlation: spin state must live on C^2 (x) C^2");
    return expectation<double>(spin_state, tensor<double>(spin_along(phi_a), spin_along(phi_b)));
}

double localization_factor(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& b) {
    return capture_probability(state.packet1, a.window) * capture_probability(state.packet2, b.window);
}

double correlation(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& b) {
    return spin_correlation(state.spin_state, a.phi, b.phi) * localization_factor(state, a, b);
}

Operator two_particle_density(const TwoParticleState& state) {
    const Operator p1 = state.packet1 * state.packet1.adjoint();
    const Operator p2 = state.packet2 * state.packet2.adjoint();
    const Operator ordered = tensor<double>(tensor<double>(state.spin_state.op(), p1), p2);  // (s1, s2, x1, x2)
    const auto n1 = std::size_t(state.packet1.size());
    const auto n2 = std::size_t(state.packet2.size());
    return permute_factors<double>(ordered, {2, 2, n1, n2}, {0, 2, 1, 3});  // -> (s1, x1, s2, x2)
}

double correlation_dense(const ParticleSpace& ps, const TwoParticleState& state, const DetectorConfig& a,
                         const DetectorConfig& b) {
    if (state.packet1.size() != Eigen::Index(ps.lattice.size()) || state.packet2.size() != Eigen::Index(ps.lattice.size()))
        throw DimensionError("correlation_dense: packets do not match the lattice");
    const Operator rho = two_particle_density(state);
    const Operator ab = tensor<double>(localized_observable(ps, a), localized_observable(ps, b));
    return trace_product<double>(rho, ab).real();
}

double chsh(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& a2, const DetectorConfig& b,
            const DetectorConfig& b2) {
    return correlation(state, a, b) - correlation(state, a, b2) + correlation(state, a2, b) + correlation(state, a2, b2);
}

Region centered_box(const Lattice<double>& lat, const std::vector<int>& center, int side) {
    if (side < 0 || side > lat.n) throw Error("centered_box: side out of range");
    if (int(center.size()) != lat.d) throw DimensionError("centered_box: center has wrong dimension");
    Region out;
    if (side == 0) return out;
    const int lo = -(side / 2);
    const int hi = side - 1 - side / 2;
    for (std::size_t s = 0; s < lat.size(); ++s) {
        const auto x = lat.site_coords(s);
        bool inside = true;
        for (int k = 0; k < lat.d && inside; ++k) {
            const int off = lat.wrap(x[std::size_t(k)] - center[std::size_t(k)] - lo);
            inside = off <= hi - lo;
        }
        if (inside) out.insert(s);
    }
    return out;
}

std::vector<WindowStep> centered_box_family(const Lattice<double>& lat, const std::vector<int>& center_a,
                                            const std::vector<int>& center_b) {
    std::vector<WindowStep> out;
    for (int k = 0; k <= lat.n; ++k) out.push_back({double(k), centered_box(lat, center_a, k), centered_box(lat, center_b, k)});
    return out;
}

const ScanRow& ScanResult::threshold_row() const {
    if (rows.empty()) throw Error("threshold_row: empty scan");
    return *std::min_element(rows.begin(), rows.end(), [](const ScanRow& x, const ScanRow& y) {
        return std::abs(x.g - inv_sqrt2) < std::abs(y.g - inv_sqrt2);
    });
}

ScanResult scan_localization(const TwoParticleState& state, const ChshAngles& angles,
                             const std::vector<WindowStep>& family) {
    std::vector<WindowStep> sorted = family;
    std::sort(sorted.begin(), sorted.end(), [](const WindowStep& x, const WindowStep& y) { return x.param < y.param; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const auto& p = sorted[i - 1];
        const auto& q = sorted[i];
        if (!std::includes(q.window_a.begin(), q.window_a.end(), p.window_a.begin(), p.window_a.end()) ||
            !std::includes(q.window_b.begin(), q.window_b.end(), p.window_b.begin(), p.window_b.end()))
            throw Error("scan_localization: window family is not nested");
    }

    ScanResult out;
    for (const auto& step : sorted) {
        const DetectorConfig a{angles.a, step.window_a}, a2{angles.a2, step.window_a};
        const DetectorConfig b{angles.b, step.window_b}, b2{angles.b2, step.window_b};
        ScanRow row;
        row.window_param = step.param;
        row.g = localization_factor(state, a, b);
        row.s = chsh(state, a, a2, b, b2);
        row.bell_satisfied = row.g <= inv_sqrt2 + 1e-12;
        if (std::abs(row.s) > tsirelson * row.g + 1e-9) out.tsirelson_scaled_bound_holds = false;
        out.rows.push_back(row);
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const ScanRow& x, const ScanRow& y) {
        return x.g != y.g ? x.g > y.g : x.window_param > y.window_param;
    });
    return out;
}

std::pair<Region, Region> tune_windows(const Lattice<double>& lat, const TwoParticleState& state, double target) {
    std::vector<Region> candidates;
    if (lat.d == 1) {
        candidates.push_back({});
        for (int start = 0; start < lat.n; ++start)
            for (int len = 1; len <= lat.n; ++len) {
                Region r;
                for (int k = 0; k < len; ++k) r.insert(std::size_t(lat.wrap(start + k)));
                candidates.push_back(std::move(r));
            }
    } else {
        for (std::size_t s = 0; s < lat.size(); ++s)
            for (int side = 0; side <= lat.n; ++side) candidates.push_back(centered_box(lat, lat.site_coords(s), side));
    }
    std::vector<double> g1, g2;
    for (const auto& r : candidates) {
        g1.push_back(capture_probability(state.packet1, r));
        g2.push_back(capture_probability(state.packet2, r));
    }
    std::size_t bi = 0, bj = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            const double err = std::abs(g1[i] * g2[j] - target);
            if (err < best) {
                best = err;
                bi = i;
                bj = j;
            }
        }
    return {candidates[bi], candidates[bj]};
}

// ---------------------------------------------------------------------------

RealistFieldModel::RealistFieldModel(double u, double v) : u_(u), v_(v) {
    if (u < 0 || v < 0) throw Error("RealistFieldModel: amplitudes must be non-negative");
    if (std::sqrt(2.0) * u > 1.0 + 1e-12 || std::sqrt(2.0) * v > 1.0 + 1e-12)
        throw Error("RealistFieldModel: field bound violated (sqrt2 * amplitude > 1)");
}

double RealistFieldModel::xi(double phi_a, double lambda) const { return std::sqrt(2.0) * u_ * std::cos(phi_a - lambda); }

double RealistFieldModel::eta(double phi_b, double lambda) const { return -std::sqrt(2.0) * v_ * std::cos(phi_b - lambda); }

double RealistFieldModel::max_field_magnitude(double phi_a, double phi_b, int points) const {
    double worst = 0;
    for (int k = 0; k < points; ++k) {
        const double lambda = two_pi * k / points;
        worst = std::max({worst, std::abs(xi(phi_a, lambda)), std::abs(eta(phi_b, lambda))});
    }
    return worst;
}

RealistExpectation realist_expectation(const RealistFieldModel& model, double phi_a, double phi_b, int points) {
    if (points < 1) throw Error("realist_expectation: need at least one quadrature point");
    RealistExpectation out;
    out.closed_form = -model.u() * model.v() * std::cos(phi_a - phi_b);
    // Periodic trapezoid: equal weights, endpoint counted once.
    double acc = 0;
    for (int k = 0; k < points; ++k) {
        const double lambda = two_pi * k / points;
        acc += model.xi(phi_a, lambda) * model.eta(phi_b, lambda);
    }
    out.quadrature = acc / points;
    return out;
}

RealistMatchReport realist_match(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& b, int grid) {
    RealistMatchReport rep;
    rep.g1 = capture_probability(state.packet1, a.window);
    rep.g2 = capture_probability(state.packet2, b.window);
    if (rep.g1 > inv_sqrt2 + 1e-12 || rep.g2 > inv_sqrt2 + 1e-12) {
        rep.message = "no bounded model in this construction";
        return rep;
    }
    const RealistFieldModel model(std::min(rep.g1, inv_sqrt2), std::min(rep.g2, inv_sqrt2));
    rep.constructed = true;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            DetectorConfig da{two_pi * i / grid, a.window}, db{two_pi * j / grid, b.window};
            const double quantum = correlation(state, da, db);
            const auto classical = realist_expectation(model, da.phi, db.phi);
            rep.max_deviation = std::max({rep.max_deviation, std::abs(quantum - classical.closed_form),
                                          std::abs(quantum - classical.quadrature)});
        }
    rep.message = "bounded model constructed (u = g1, v = g2)";
    return rep;
}

}  // namespace qax::bell
