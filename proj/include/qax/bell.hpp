#pragma once

// Spin correlations of spatially localized detectors, CHSH analysis as a
// function of the localization factor g, and an explicit bounded random-field
// model reproducing the localized correlation.
//
// A particle lives on C^2 (x) l^2(lattice), spin factor first.  A detector
// measures sigma.m on its window X and reports 0 when the particle is not
// found there: A = (sigma.m) (x) P_X.

#include "qax/linalg.hpp"
#include "qax/space.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qax::bell {

inline constexpr double inv_sqrt2 = 0.70710678118654752440;
inline constexpr double tsirelson = 2.0 * 1.41421356237309504880;

struct ParticleSpace {
    Lattice<double> lattice;
    Eigen::Index dim() const { return 2 * Eigen::Index(lattice.size()); }
};

/// Analyzer direction m = (cos phi, sin phi, 0) and detection window.
struct DetectorConfig {
    double phi = 0;
    Region window;
};

struct TwoParticleState {
    DensityOperator<double> spin_state;  // on C^2 (x) C^2
    StateVector packet1;                 // on the lattice
    StateVector packet2;
};

/// (|01> - |10>) / sqrt 2.
DensityOperator<double> singlet();

/// Normalized periodic Gaussian with position spread `width` (length units)
/// centered on a lattice site.
StateVector gaussian_packet(const Lattice<double>& lat, double width, const std::vector<int>& center);

TwoParticleState singlet_gaussian_state(const Lattice<double>& lat, double width, const std::vector<int>& center1,
                                        const std::vector<int>& center2);

/// sigma.m for m in the x-y plane.
Operator spin_along(double phi);

Operator localized_observable(const ParticleSpace& ps, const DetectorConfig& det);

/// <packet| P_X |packet>.
double capture_probability(const StateVector& packet, const Region& window);

/// Tr(rho_spin sigma.m (x) sigma.n).
double spin_correlation(const DensityOperator<double>& spin_state, double phi_a, double phi_b);

/// Factored route: spin correlation times g1 g2.
double correlation(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& b);

/// Full tensor contraction Tr(rho A (x) B) on the two-particle space.
double correlation_dense(const ParticleSpace& ps, const TwoParticleState& state, const DetectorConfig& a,
                         const DetectorConfig& b);

/// The two-particle density operator on (C^2 (x) L) (x) (C^2 (x) L).
Operator two_particle_density(const TwoParticleState& state);

double localization_factor(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& b);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& a2, const DetectorConfig& b,
            const DetectorConfig& b2);

struct ChshAngles {
    double a = 0, a2 = 0, b = 0, b2 = 0;
};

/// Angles for which the singlet reaches S = +2 sqrt 2 under the sign convention of chsh().
inline ChshAngles optimal_angles() { return {0.0, -EIGEN_PI / 2, 3 * EIGEN_PI / 4, EIGEN_PI / 4}; }

struct WindowStep {
    double param = 0;
    Region window_a;
    Region window_b;
};

/// Nested windows: box of side k sites (k = 0..n per axis) centered on each
/// packet center.
std::vector<WindowStep> centered_box_family(const Lattice<double>& lat, const std::vector<int>& center_a,
                                            const std::vector<int>& center_b);

Region centered_box(const Lattice<double>& lat, const std::vector<int>& center, int side);

struct ScanRow {
    double window_param = 0;
    double g = 0;
    double s = 0;
    bool bell_satisfied = false;
};

struct ScanResult {
    std::vector<ScanRow> rows;  // g descending, ties by window_param descending
    bool tsirelson_scaled_bound_holds = true;

    /// Row whose g is nearest 1/sqrt 2.
    const ScanRow& threshold_row() const;
};

ScanResult scan_localization(const TwoParticleState& state, const ChshAngles& angles,
                             const std::vector<WindowStep>& family);

/// Pair of windows whose g is nearest `target`, searched over all intervals
/// (d = 1) or centered boxes (d > 1) for both detectors.
std::pair<Region, Region> tune_windows(const Lattice<double>& lat, const TwoParticleState& state, double target);

// ---------------------------------------------------------------------------
// Local-realist random fields

/// xi(lambda) = sqrt2 u cos(phi_a - lambda), eta(lambda) = -sqrt2 v cos(phi_b - lambda),
/// lambda uniform on [0, 2 pi).
class RealistFieldModel {
  public:
    RealistFieldModel(double u, double v);

    double u() const noexcept { return u_; }
    double v() const noexcept { return v_; }

    double xi(double phi_a, double lambda) const;
    double eta(double phi_b, double lambda) const;

    /// Largest |xi|, |eta| on a uniform lambda grid.
    double max_field_magnitude(double phi_a, double phi_b, int points) const;

  private:
    double u_, v_;
};

struct RealistExpectation {
    double closed_form = 0;  // -u v cos(phi_a - phi_b)
    double quadrature = 0;   // trapezoid over lambda
};

RealistExpectation realist_expectation(const RealistFieldModel& model, double phi_a, double phi_b, int points = 1024);

struct RealistMatchReport {
    bool constructed = false;
    double g1 = 0, g2 = 0;
    double max_deviation = 0;
    std::string message;
};

/// Builds the model with u = g1, v = g2 when both are <= 1/sqrt 2 and compares
/// it to the quantum correlation on a phi_a x phi_b grid of `grid` points each.
RealistMatchReport realist_match(const TwoParticleState& state, const DetectorConfig& a, const DetectorConfig& b,
                                 int grid = 64);

}  // namespace qax::bell
