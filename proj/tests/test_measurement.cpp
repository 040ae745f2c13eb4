#include "qax/measurement.hpp"
#include "qax/random.hpp"
#include "qax/space.hpp"

#include "test_util.hpp"

using namespace qax;
using namespace qax::test;

namespace {

const auto sigma = pauli_matrices<double>();

DensityOperator<double> plus_density() {
    StateVector v(2);
    v << 1, 1;
    return DensityOperator<double>::pure(v);
}

Operator random_three_outcome_observable(Rng& rng, Eigen::Index dim) {
    // Hermitian with eigenvalues drawn from {-1, 0, +1}.
    const Operator u = random_unitary<double>(dim, rng);
    Operator d = Operator::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) d(i, i) = double(i % 3) - 1.0;
    return hermitian_part<double>(Operator(u * d * u.adjoint()));
}

}  // namespace

TEST(OutcomeSpace, RejectsEmptyAndDuplicates) {
    EXPECT_THROW(OutcomeSpace(std::vector<std::string>{}), Error);
    EXPECT_THROW(OutcomeSpace({"a", "a"}), Error);
    const OutcomeSpace s({"a", "b"});
    EXPECT_EQ(s.index_of("b"), 1u);
    EXPECT_THROW(s.index_of("c"), Error);
}

TEST(Pvm, SigmaZ) {
    const auto p = pvm_from_observable<double>(sigma[2]);
    EXPECT_EQ(p.space.labels(), (std::vector<std::string>{"-1", "1"}));
    EXPECT_LT(max_diff(p.effect("1"), ket_bra(basis(2, 0), basis(2, 0))), 1e-15);
    EXPECT_LT(max_diff(p.effect("-1"), ket_bra(basis(2, 1), basis(2, 1))), 1e-15);
}

TEST(Pvm, FullyDegenerateIdentity) {
    const auto p = pvm_from_observable<double>(identity<double>(3));
    EXPECT_EQ(p.space.labels(), (std::vector<std::string>{"1"}));
    EXPECT_LT(max_diff(p.effects[0], identity<double>(3)), 1e-15);
}

TEST(Pvm, EffectsAreOrthogonalProjectors) {
    Rng rng(10);
    for (int k = 0; k < 20; ++k) {
        const auto p = pvm_from_observable<double>(random_hermitian<double>(5, rng));
        for (std::size_t i = 0; i < p.effects.size(); ++i)
            for (std::size_t j = 0; j < p.effects.size(); ++j) {
                const Operator prod = p.effects[i] * p.effects[j];
                EXPECT_LT(max_diff(prod, i == j ? p.effects[i] : Operator(Operator::Zero(5, 5))), 1e-10);
            }
    }
}

TEST(Pvm, RejectsNonHermitian) {
    Operator nh = sigma[0];
    nh(1, 0) = 3;
    EXPECT_THROW(pvm_from_observable<double>(nh), NotHermitianError);
}

TEST(Povm, ValidationCatchesBadEffects) {
    EXPECT_THROW(make_povm<double>(OutcomeSpace({"a", "b"}), {diag({1, 0}), diag({0, 0.5})}), ValidationError);
    EXPECT_THROW(make_povm<double>(OutcomeSpace({"a", "b"}), {diag({1.5, 0}), diag({-0.5, 1})}), ValidationError);
    EXPECT_THROW(make_povm<double>(OutcomeSpace({"a"}), {diag({1, 1}), diag({0, 0})}), Error);
}

TEST(Luders, ProjectiveKrausAreTheProjectors) {
    const auto p = make_povm<double>(OutcomeSpace({"0", "1"}), {diag({1, 0}), diag({0, 1})});
    const auto ins = luders_instrument(p);
    ASSERT_EQ(ins.kraus[0].size(), 1u);
    EXPECT_EQ(ins.kraus[0][0], diag({1, 0}));
    EXPECT_EQ(ins.kraus[1][0], diag({0, 1}));
}

TEST(Luders, UnsharpKrausAreSquareRoots) {
    const auto p = make_povm<double>(OutcomeSpace({"0", "1"}), {diag({0.8, 0.2}), diag({0.2, 0.8})});
    const auto ins = luders_instrument(p);
    EXPECT_LT(max_diff(ins.kraus[0][0], diag({std::sqrt(0.8), std::sqrt(0.2)})), 1e-14);
    EXPECT_LT(max_diff(ins.kraus[1][0], diag({std::sqrt(0.2), std::sqrt(0.8)})), 1e-14);
}

TEST(Luders, TrivialPovmIsIdentityChannel) {
    const auto ins = luders_instrument(make_povm<double>(OutcomeSpace({"all"}), {identity<double>(3)}));
    Rng rng(11);
    const auto rho = random_density<double>(3, rng);
    const auto out = apply(ins, "all", rho);
    EXPECT_NEAR(out.probability, 1.0, 1e-14);
    EXPECT_LT(max_diff(out.post_state->op(), rho.op()), 1e-14);
}

TEST(Apply, PlusStateMeasuredAlongZ) {
    const auto ins = luders_instrument(pvm_from_observable<double>(sigma[2]));
    const auto out = apply(ins, "1", plus_density());
    EXPECT_NEAR(out.probability, 0.5, 1e-15);
    EXPECT_LT(max_diff(out.post_state->op(), ket_bra(basis(2, 0), basis(2, 0))), 1e-15);
}

TEST(Apply, EigenstateIsUnchanged) {
    const auto ins = luders_instrument(pvm_from_observable<double>(sigma[2]));
    const auto rho = DensityOperator<double>::pure(basis(2, 0));
    const auto out = apply(ins, "1", rho);
    EXPECT_NEAR(out.probability, 1.0, 1e-15);
    EXPECT_LT(max_diff(out.post_state->op(), rho.op()), 1e-15);
    const auto other = apply(ins, "-1", rho);
    EXPECT_EQ(other.probability, 0.0);
    EXPECT_FALSE(other.post_state.has_value());
}

TEST(Apply, Errors) {
    const auto ins = luders_instrument(pvm_from_observable<double>(sigma[2]));
    EXPECT_THROW(apply(ins, "7", plus_density()), Error);
    EXPECT_THROW(apply(ins, "1", DensityOperator<double>::maximally_mixed(3)), DimensionError);
}

TEST(Apply, ProbabilitiesSumToOne) {
    Rng rng(12);
    for (int k = 0; k < 50; ++k) {
        const auto ins = luders_instrument(pvm_from_observable<double>(random_hermitian<double>(4, rng)));
        const auto rho = random_density<double>(4, rng);
        double total = 0;
        for (const auto& l : ins.space.labels()) total += apply(ins, l, rho).probability;
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(ApplyEvent, TotalAndEmptyEvents) {
    const auto ins = luders_instrument(pvm_from_observable<double>(sigma[0]));
    const auto rho = DensityOperator<double>::pure(basis(2, 0));
    const auto all = apply_event(ins, {"-1", "1"}, rho);
    EXPECT_NEAR(all.probability, 1.0, 1e-15);
    const auto none = apply_event(ins, {}, rho);
    EXPECT_EQ(none.probability, 0.0);
    EXPECT_FALSE(none.post_state.has_value());
    EXPECT_THROW(apply_event(ins, {"1", "2"}, rho), Error);
}

TEST(ApplyEvent, AdditiveOverThreeOutcomes) {
    Rng rng(13);
    for (int k = 0; k < 20; ++k) {
        const auto ins = luders_instrument(pvm_from_observable<double>(random_three_outcome_observable(rng, 6)));
        ASSERT_EQ(ins.space.size(), 3u);
        const auto rho = random_density<double>(6, rng);
        const double pm = apply(ins, "-1", rho).probability, pp = apply(ins, "1", rho).probability;
        EXPECT_NEAR(apply_event(ins, {"-1", "1"}, rho).probability, pm + pp, 1e-12);
    }
}

TEST(InstrumentProperties, RandomPovmInvariants) {
    Rng rng(14);
    for (int k = 0; k < 100; ++k) {
        const Eigen::Index dim = 2 + k % 4;
        const auto povm = make_povm<double>(OutcomeSpace({"a", "b", "c"}), random_povm_effects<double>(dim, 3, rng));
        const auto ins = luders_instrument(povm);
        const auto r1 = random_density<double>(dim, rng), r2 = random_density<double>(dim, rng);
        double total = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            const Operator out = ins.map(i, r1.op());
            ASSERT_GE(min_eigenvalue<double>(out), -1e-10);
            ASSERT_LE(out.trace().real(), 1 + 1e-10);
            total += out.trace().real();
            // Born probabilities from the POVM agree with the instrument.
            ASSERT_NEAR(out.trace().real(), probabilities(povm, r1)[i], 1e-12);
            const Operator lhs = ins.map(i, Operator(0.4 * r1.op() + 0.6 * r2.op()));
            ASSERT_LT(max_diff(lhs, Operator(0.4 * ins.map(i, r1.op()) + 0.6 * ins.map(i, r2.op()))), 1e-12);
        }
        ASSERT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(InstrumentProperties, ProjectiveRepeatability) {
    Rng rng(15);
    for (int k = 0; k < 30; ++k) {
        const auto ins = luders_instrument(pvm_from_observable<double>(random_hermitian<double>(4, rng)));
        const auto rho = random_density<double>(4, rng);
        for (const auto& l : ins.space.labels()) {
            const auto first = apply(ins, l, rho);
            ASSERT_TRUE(first.post_state);
            const auto second = apply(ins, l, *first.post_state);
            EXPECT_NEAR(second.probability, 1.0, 1e-10);
            EXPECT_LT(max_diff(second.post_state->op(), first.post_state->op()), 1e-10);
        }
    }
}

TEST(Instrument, RejectsTraceIncreasingMaps) {
    EXPECT_THROW(make_instrument<double>(OutcomeSpace({"a"}), {{Operator(2.0 * identity<double>(2))}}), ValidationError);
    EXPECT_THROW(make_instrument<double>(OutcomeSpace({"a", "b"}), {{diag({1, 0})}, {diag({0, 0.5})}}), ValidationError);
}
