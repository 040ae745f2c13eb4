#include "qax/bell.hpp"
#include "qax/random.hpp"

#include "test_util.hpp"

using namespace qax;
using namespace qax::bell;
using namespace qax::test;

namespace {

const double sqrt2 = std::sqrt(2.0);

// Capture probability of the periodic Gaussian from its unnormalized weights
// exp(-r^2 / 2 w^2), summed directly on a 1-d ring.
double gaussian_capture_1d(int n, double dx, double width, int center, const Region& window) {
    double inside = 0, total = 0;
    for (int x = 0; x < n; ++x) {
        const int raw = std::abs(x - center) % n;
        const double r = std::min(raw, n - raw) * dx;
        const double w = std::exp(-r * r / (2 * width * width));
        total += w;
        if (window.count(std::size_t(x))) inside += w;
    }
    return inside / total;
}

DetectorConfig det(double phi, Region w) { return {phi, std::move(w)}; }

double chsh_at(const TwoParticleState& st, const ChshAngles& ang, const Region& wa, const Region& wb) {
    return chsh(st, det(ang.a, wa), det(ang.a2, wa), det(ang.b, wb), det(ang.b2, wb));
}

Region interval(int start, int len, int n) {
    Region r;
    for (int k = 0; k < len; ++k) r.insert(std::size_t(((start + k) % n + n) % n));
    return r;
}

}  // namespace

TEST(Singlet, CorrelationIsMinusCosine) {
    const auto s = singlet();
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const double a = 2 * EIGEN_PI * i / 16, b = 2 * EIGEN_PI * j / 16;
            EXPECT_NEAR(spin_correlation(s, a, b), -std::cos(a - b), 1e-14);
        }
}

TEST(Singlet, IsRotationInvariantAndPure) {
    const auto s = singlet();
    EXPECT_NEAR(s.purity(), 1.0, 1e-15);
    const auto rep = spin_rep<double>(1);
    const Operator r = spin_rotation<double>(rep, {0.2, 0.5, -0.7}, 1.3);
    const Operator rr = tensor<double>(r, r);
    EXPECT_LT(max_diff(Operator(rr * s.op() * rr.adjoint()), s.op()), 1e-14);
}

TEST(SpinAlong, IsUnitVectorObservable) {
    for (double phi : {0.0, 0.4, 2.0, -1.0}) {
        const Operator m = spin_along(phi);
        EXPECT_LT(max_diff(Operator(m * m), identity<double>(2)), 1e-15);
        EXPECT_NEAR(trace<double>(m).real(), 0.0, 1e-15);
    }
}

TEST(GaussianPacket, CaptureMatchesDirectSum) {
    const Lattice<double> lat(1, 32, 0.5);
    const StateVector psi = gaussian_packet(lat, 1.3, {5});
    EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
    for (int len : {1, 3, 8, 20, 32}) {
        const Region w = interval(5 - len / 2, len, 32);
        EXPECT_NEAR(capture_probability(psi, w), gaussian_capture_1d(32, 0.5, 1.3, 5, w), 1e-14);
    }
    EXPECT_NEAR(capture_probability(psi, lat.all_sites()), 1.0, 1e-14);
    EXPECT_EQ(capture_probability(psi, {}), 0.0);
}

TEST(GaussianPacket, SeparableInHigherDimensions) {
    const Lattice<double> l1(1, 6, 1.0), l2(2, 6, 1.0);
    const StateVector p1 = gaussian_packet(l1, 1.1, {2}), p2 = gaussian_packet(l1, 1.1, {4});
    const StateVector p = gaussian_packet(l2, 1.1, {2, 4});
    EXPECT_LT((p - tensor<double>(p1, p2)).norm(), 1e-14);
    EXPECT_THROW(gaussian_packet(l2, 1.0, {1}), DimensionError);
    EXPECT_THROW(gaussian_packet(l1, 0.0, {1}), Error);
}

TEST(Correlation, DenseMatchesFactored) {
    Rng rng(60);
    const Lattice<double> lat(1, 8, 1.0);
    const ParticleSpace ps{lat};
    std::uniform_real_distribution<double> angle(0, 2 * EIGEN_PI);
    std::uniform_int_distribution<int> site(0, 7), len(0, 8);
    for (int k = 0; k < 25; ++k) {
        TwoParticleState st{random_density<double>(4, rng), random_state_vector<double>(8, rng), random_state_vector<double>(8, rng)};
        const DetectorConfig a = det(angle(rng), interval(site(rng), len(rng), 8));
        const DetectorConfig b = det(angle(rng), interval(site(rng), len(rng), 8));
        EXPECT_NEAR(correlation_dense(ps, st, a, b), correlation(st, a, b), 1e-12);
    }
}

TEST(Correlation, TwoParticleDensityIsValidState) {
    const Lattice<double> lat(1, 4, 1.0);
    const auto st = singlet_gaussian_state(lat, 1.0, {0}, {2});
    const auto v = validate_density<double>(two_particle_density(st));
    EXPECT_TRUE(v.ok());
    EXPECT_NEAR(v.state->purity(), 1.0, 1e-12);
}

TEST(Correlation, RejectsWindowsOffLattice) {
    const Lattice<double> lat(1, 4, 1.0);
    EXPECT_THROW(localized_observable(ParticleSpace{lat}, det(0, {4})), Error);
}

TEST(Chsh, TsirelsonAtFullLocalization) {
    const Lattice<double> lat(1, 16, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {4}, {12});
    const double s = chsh_at(st, optimal_angles(), lat.all_sites(), lat.all_sites());
    EXPECT_NEAR(s, 2 * sqrt2, 1e-12);
}

TEST(Chsh, ScalesLinearlyWithLocalization) {
    const Lattice<double> lat(1, 16, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {4}, {12});
    const double full = chsh_at(st, optimal_angles(), lat.all_sites(), lat.all_sites());
    for (int k = 0; k <= 16; ++k) {
        const Region wa = centered_box(lat, {4}, k), wb = centered_box(lat, {12}, k);
        const double g = localization_factor(st, det(0, wa), det(0, wb));
        EXPECT_NEAR(chsh_at(st, optimal_angles(), wa, wb), g * full, 1e-12);
    }
}

TEST(Chsh, BellBoundBelowThreshold) {
    // For g <= 1/sqrt 2, |S| <= 2 sqrt 2 g <= 2 for any analyzer angles.
    Rng rng(61);
    const Lattice<double> lat(1, 32, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {8}, {24});
    const auto [wa, wb] = tune_windows(lat, st, inv_sqrt2);
    const double g = localization_factor(st, det(0, wa), det(0, wb));
    ASSERT_LE(g, inv_sqrt2 + 1e-3);
    std::uniform_real_distribution<double> angle(0, 2 * EIGEN_PI);
    for (int k = 0; k < 200; ++k) {
        const ChshAngles ang{angle(rng), angle(rng), angle(rng), angle(rng)};
        EXPECT_LE(std::abs(chsh_at(st, ang, wa, wb)), 2 * sqrt2 * g + 1e-12);
    }
}

TEST(TuneWindows, ReachesBellThreshold) {
    const Lattice<double> lat(1, 32, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {8}, {24});
    const auto [wa, wb] = tune_windows(lat, st, inv_sqrt2);
    EXPECT_NEAR(std::abs(chsh_at(st, optimal_angles(), wa, wb)), 2.0, 2e-3);
}

TEST(TuneWindows, WorksOnSquareLattice) {
    const Lattice<double> lat(2, 6, 1.0);
    const auto st = singlet_gaussian_state(lat, 1.0, {1, 1}, {4, 4});
    const auto [wa, wb] = tune_windows(lat, st, 0.5);
    EXPECT_NEAR(localization_factor(st, det(0, wa), det(0, wb)), 0.5, 0.05);
}

TEST(CenteredBox, SizesAndNesting) {
    const Lattice<double> lat(2, 5, 1.0);
    const auto fam = centered_box_family(lat, {0, 0}, {2, 3});
    ASSERT_EQ(fam.size(), 6u);
    for (std::size_t k = 0; k < fam.size(); ++k) {
        EXPECT_EQ(fam[k].window_a.size(), k * k);
        if (k > 0) EXPECT_TRUE(std::includes(fam[k].window_a.begin(), fam[k].window_a.end(), fam[k - 1].window_a.begin(), fam[k - 1].window_a.end()));
    }
    EXPECT_EQ(centered_box(lat, {0, 0}, 1), Region{0});
    EXPECT_EQ(centered_box(lat, {0, 0}, 5), lat.all_sites());
    EXPECT_THROW(centered_box(lat, {0, 0}, 6), Error);
}

TEST(Scan, SortedRowsFlagsAndBound) {
    const Lattice<double> lat(1, 32, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {8}, {24});
    const auto res = scan_localization(st, optimal_angles(), centered_box_family(lat, {8}, {24}));
    ASSERT_EQ(res.rows.size(), 33u);
    EXPECT_TRUE(res.tsirelson_scaled_bound_holds);
    for (std::size_t i = 1; i < res.rows.size(); ++i) {
        EXPECT_GE(res.rows[i - 1].g, res.rows[i].g);
        EXPECT_GE(std::abs(res.rows[i - 1].s), std::abs(res.rows[i].s) - 1e-15);
    }
    for (const auto& r : res.rows) {
        EXPECT_EQ(r.bell_satisfied, r.g <= inv_sqrt2 + 1e-12);
        if (r.bell_satisfied) EXPECT_LE(std::abs(r.s), 2.0 + 1e-9);
    }
    EXPECT_NEAR(res.rows.front().s, 2 * sqrt2, 1e-12);
    EXPECT_EQ(res.rows.back().s, 0.0);
    const auto& th = res.threshold_row();
    for (const auto& r : res.rows) EXPECT_LE(std::abs(th.g - inv_sqrt2), std::abs(r.g - inv_sqrt2));
}

TEST(Scan, RejectsNonNestedFamily) {
    const Lattice<double> lat(1, 8, 1.0);
    const auto st = singlet_gaussian_state(lat, 1.0, {2}, {6});
    const std::vector<WindowStep> fam{{0, {1, 2}, {6}}, {1, {2, 3}, {6, 7}}};
    EXPECT_THROW(scan_localization(st, optimal_angles(), fam), Error);
}

TEST(Realist, QuadratureMatchesClosedForm) {
    Rng rng(62);
    std::uniform_real_distribution<double> amp(0, inv_sqrt2), angle(-4, 4);
    for (int k = 0; k < 50; ++k) {
        const RealistFieldModel m(amp(rng), amp(rng));
        const double a = angle(rng), b = angle(rng);
        const auto e = realist_expectation(m, a, b);
        EXPECT_NEAR(e.quadrature, e.closed_form, 1e-14);
        EXPECT_NEAR(e.closed_form, -m.u() * m.v() * std::cos(a - b), 1e-15);
        EXPECT_LE(m.max_field_magnitude(a, b, 4096), 1.0 + 1e-12);
    }
}

TEST(Realist, FieldBoundEnforced) {
    EXPECT_NO_THROW(RealistFieldModel(inv_sqrt2, inv_sqrt2));
    EXPECT_THROW(RealistFieldModel(0.8, 0.1), Error);
    EXPECT_THROW(RealistFieldModel(0.1, -0.1), Error);
    const RealistFieldModel edge(inv_sqrt2, inv_sqrt2);
    EXPECT_NEAR(edge.max_field_magnitude(0.3, 1.1, 4096), 1.0, 1e-6);
}

TEST(Realist, MatchReproducesLocalizedCorrelation) {
    const Lattice<double> lat(1, 32, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {8}, {24});
    int side = 0;
    while (capture_probability(st.packet1, centered_box(lat, {8}, side + 1)) <= inv_sqrt2) ++side;
    ASSERT_GT(side, 0);
    const auto rep = realist_match(st, det(0, centered_box(lat, {8}, side)), det(0, centered_box(lat, {24}, side)));
    ASSERT_TRUE(rep.constructed) << rep.message;
    EXPECT_LT(rep.max_deviation, 1e-12);
    EXPECT_LE(rep.g1, inv_sqrt2);
    EXPECT_NEAR(rep.g1, rep.g2, 1e-14);
}

TEST(Realist, RefusesAboveThreshold) {
    const Lattice<double> lat(1, 16, 1.0);
    const auto st = singlet_gaussian_state(lat, 2.0, {4}, {12});
    const auto rep = realist_match(st, det(0, lat.all_sites()), det(0, centered_box(lat, {12}, 2)));
    EXPECT_FALSE(rep.constructed);
    EXPECT_EQ(rep.message, "no bounded model in this construction");
}
