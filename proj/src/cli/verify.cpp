#include "qax/cli/commands.hpp"

#include "qax/bell.hpp"
#include "qax/composition.hpp"
#include "qax/dynamics.hpp"
#include "qax/internal_symmetry.hpp"
#include "qax/io.hpp"
#include "qax/random.hpp"
#include "qax/system.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>

namespace qax::cli {

using nlohmann::json;

namespace {

using Rng = std::mt19937_64;

class Suite {
  public:
    Suite(int axiom, std::string name) : axiom_(axiom), name_(std::move(name)) {}

    void residual(const std::string& check, double value, double tol) {
        const bool ok = std::isfinite(value) && value <= tol;
        record(check, ok, {{"max_residual", value}, {"tolerance", tol}});
    }

    void flag(const std::string& check, bool ok, const std::string& detail = {}) {
        json extra = json::object();
        if (!detail.empty()) extra["detail"] = detail;
        record(check, ok, std::move(extra));
    }

    /// Runs body, converting an escaping exception into a failed check.
    void guarded(const std::string& check, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            flag(check, false, std::string("exception: ") + e.what());
        }
    }

    bool passed() const noexcept { return passed_; }

    json to_json() const {
        return {{"axiom", axiom_}, {"name", name_}, {"passed", passed_}, {"checks", checks_}};
    }

  private:
    void record(const std::string& check, bool ok, json extra) {
        json c = {{"name", check}, {"passed", ok}};
        c.update(extra);
        checks_.push_back(std::move(c));
        passed_ = passed_ && ok;
    }

    int axiom_;
    std::string name_;
    json checks_ = json::array();
    bool passed_ = true;
};

Eigen::Index uniform_dim(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

double density_residual(const DensityOperator<double>& rho) {
    return std::max({std::abs(rho.op().trace() - std::complex<double>(1)), hermiticity_residual<double>(rho.op()),
                     std::max(0.0, -min_eigenvalue<double>(rho.op()))});
}

Suite hilbert_space(const RunConfig& cfg, const SystemDescriptor& sys, Rng& rng) {
    Suite s(1, "Hilbert space");
    const auto& tol = cfg.tol;
    s.guarded("example state", [&] {
        const auto v = validate_density<double>(sys.state.op(), tol);
        s.flag("example state is a density operator", v.ok());
        s.residual("example state trace/hermiticity/positivity", density_residual(sys.state), tol.trace);
        const Operator sx = tensor<double>(pauli_matrices<double>()[0], identity<double>(Eigen::Index(sys.lattice.size())));
        s.residual("Born rule <sigma_x> = 1 on spin +x", std::abs(expectation<double>(sys.state, sx, tol) - 1.0), 1e-12);
    });
    s.guarded("spectral", [&] {
        double completeness = 0, orthogonality = 0, recon = 0;
        for (int k = 0; k < 100; ++k) {
            const Operator a = random_hermitian<double>(uniform_dim(rng, 2, 16), rng);
            const auto sd = spectral<double>(a, tol);
            Operator sum = Operator::Zero(a.rows(), a.cols());
            for (std::size_t i = 0; i < sd.size(); ++i) {
                sum += sd.projectors[i];
                for (std::size_t j = 0; j < sd.size(); ++j) {
                    const Operator prod = sd.projectors[i] * sd.projectors[j];
                    orthogonality = std::max(orthogonality, max_abs<double>(Operator(i == j ? Operator(prod - sd.projectors[i]) : prod)));
                }
            }
            completeness = std::max(completeness, max_abs<double>(Operator(sum - identity<double>(a.rows()))));
            recon = std::max(recon, max_abs<double>(Operator(sd.reconstruct() - a)));
        }
        s.residual("spectral projector completeness (100 random, dims 2-16)", completeness, tol.herm);
        s.residual("spectral projector orthogonality", orthogonality, tol.herm);
        s.residual("spectral reconstruction", recon, tol.recon);
    });
    s.guarded("expectation", [&] {
        double lin = 0, proj_excess = 0;
        std::normal_distribution<double> normal;
        for (int k = 0; k < 100; ++k) {
            const auto dim = uniform_dim(rng, 2, 8);
            const auto rho = random_density<double>(dim, rng);
            const Operator a = random_hermitian<double>(dim, rng), b = random_hermitian<double>(dim, rng);
            const double alpha = normal(rng), beta = normal(rng);
            const double lhs = expectation<double>(rho, Operator(alpha * a + beta * b), tol);
            lin = std::max(lin, std::abs(lhs - alpha * expectation<double>(rho, a, tol) - beta * expectation<double>(rho, b, tol)));
            for (const auto& p : spectral<double>(a, tol).projectors) {
                const double e = expectation<double>(rho, p, tol);
                proj_excess = std::max({proj_excess, -e, e - 1.0});
            }
        }
        s.residual("expectation linear in the observable", lin, 1e-12);
        s.residual("projector expectations within [0, 1]", std::max(0.0, proj_excess), tol.psd);
    });
    return s;
}

Suite measurements(const RunConfig& cfg, const SystemDescriptor& sys, Rng& rng) {
    Suite s(2, "Measurements");
    const auto& tol = cfg.tol;
    auto total_probability_error = [&](const Instrument<double>& ins, const DensityOperator<double>& rho) {
        double p = 0;
        for (const auto& l : ins.space.labels()) p += apply<double>(ins, l, rho, tol).probability;
        return std::abs(p - 1.0);
    };
    s.guarded("example instrument", [&] {
        s.flag("system descriptor consistent", sys.consistency_problems().empty());
        s.residual("example instrument completeness sum_i Tr Gamma_i(rho) = 1", total_probability_error(sys.instrument, sys.state), 1e-10);
        double repeat = 0, cond = 0;
        for (const auto& l : sys.instrument.space.labels()) {
            const auto first = apply<double>(sys.instrument, l, sys.state, tol);
            if (!first.post_state) continue;
            const auto second = apply<double>(sys.instrument, l, *first.post_state, tol);
            repeat = std::max(repeat, max_abs<double>(Operator(second.post_state->op() - first.post_state->op())));
            cond = std::max(cond, std::abs(second.probability - 1.0));
        }
        s.residual("projective repeatability (post-state)", repeat, 1e-10);
        s.residual("projective repeatability (probability 1)", cond, 1e-10);
    });
    s.guarded("random POVM instruments", [&] {
        double complete = 0, neg = 0, contract = 0, lin = 0, additivity = 0;
        for (int k = 0; k < 100; ++k) {
            const auto dim = uniform_dim(rng, 2, 6);
            const auto outcomes = std::size_t(uniform_dim(rng, 2, 4));
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < outcomes; ++i) labels.push_back("o" + std::to_string(i));
            const auto povm = make_povm<double>(OutcomeSpace(labels), random_povm_effects<double>(dim, outcomes, rng), tol);
            const auto ins = luders_instrument<double>(povm, tol);
            const auto rho1 = random_density<double>(dim, rng);
            const auto rho2 = random_density<double>(dim, rng);
            complete = std::max(complete, total_probability_error(ins, rho1));
            double psum = 0;
            for (std::size_t i = 0; i < outcomes; ++i) {
                const Operator out = ins.map(i, rho1.op());
                neg = std::max(neg, -min_eigenvalue<double>(out));
                contract = std::max(contract, out.trace().real() - 1.0);
                const Operator mix = ins.map(i, Operator(0.3 * rho1.op() + 0.7 * rho2.op()));
                lin = std::max(lin, max_abs<double>(Operator(mix - 0.3 * ins.map(i, rho1.op()) - 0.7 * ins.map(i, rho2.op()))));
                psum += out.trace().real();
            }
            const std::set<std::string> all(labels.begin(), labels.end());
            additivity = std::max(additivity, std::abs(apply_event<double>(ins, all, rho1, tol).probability - psum));
        }
        s.residual("instrument completeness on random POVMs", complete, 1e-10);
        s.residual("Gamma_i positivity", std::max(0.0, neg), tol.psd);
        s.residual("trace-norm contractivity", std::max(0.0, contract), tol.trace);
        s.residual("Gamma_i linearity", lin, 1e-12);
        s.residual("event additivity Gamma_Omega", additivity, 1e-10);
    });
    if (cfg.povm) {
        s.guarded("configured POVM", [&] {
            const auto povm = io::povm_from_json(*cfg.povm, tol);
            const auto ins = luders_instrument<double>(povm, tol);
            double worst = 0;
            for (int k = 0; k < 20; ++k) worst = std::max(worst, total_probability_error(ins, random_density<double>(povm.dim(), rng)));
            s.residual("configured POVM: Lueders instrument completeness", worst, 1e-10);
        });
    }
    if (cfg.instrument) {
        s.guarded("configured instrument", [&] {
            const auto ins = io::instrument_from_json(*cfg.instrument, tol);
            double worst = 0;
            for (int k = 0; k < 20; ++k) worst = std::max(worst, total_probability_error(ins, random_density<double>(ins.dim(), rng)));
            s.residual("configured instrument completeness", worst, 1e-10);
        });
    }
    return s;
}

Suite time_evolution(const RunConfig& cfg, const SystemDescriptor& sys) {
    Suite s(3, "Time");
    const auto& tol = cfg.tol;
    s.guarded("constant Hamiltonian", [&] {
        const Operator h = pauli_hamiltonian<double>(sys.lattice, cfg.mass, cfg.field, cfg.mu);
        double unitary = 0;
        for (double t : {0.1, 1.0, 7.5}) unitary = std::max(unitary, unitarity_residual<double>(propagator_const<double>(h, t, tol).u));
        s.residual("propagator unitarity ||U^dagger U - I||", unitary, tol.unitary);
        const Operator us = propagator_const<double>(h, 0.3, tol).u, ut = propagator_const<double>(h, 0.9, tol).u;
        s.residual("group law U(s)U(t) = U(s+t)", operator_norm<double>(Operator(us * ut - propagator_const<double>(h, 1.2, tol).u)), 1e-9);
        const auto later = evolve<double>(sys.state, propagator_const<double>(h, 1.7, tol), tol);
        s.residual("energy conservation", std::abs(expectation<double>(later, h, tol) - expectation<double>(sys.state, h, tol)), 1e-9);
        s.residual("evolved state remains a density operator", density_residual(later), tol.trace);
    });
    s.guarded("time-dependent Hamiltonian", [&] {
        const auto sigma = pauli_matrices<double>();
        const auto h = Hamiltonian<double>::time_dependent([&](double t) { return Operator(sigma[2] + t * sigma[0]); }, 2);
        const Operator ref = propagator_td<double>(h, 0.0, 1.0, 10000, tol).u;
        const double e1 = operator_norm<double>(Operator(propagator_td<double>(h, 0.0, 1.0, 20, tol).u - ref));
        const double e2 = operator_norm<double>(Operator(propagator_td<double>(h, 0.0, 1.0, 40, tol).u - ref));
        s.residual("stepped propagator unitarity", unitarity_residual<double>(propagator_td<double>(h, 0.0, 1.0, 40, tol).u), tol.unitary);
        s.residual("second-order self-convergence |ratio - 4| / 4", std::abs(e1 / e2 - 4.0) / 4.0, 0.25);
    });
    return s;
}

Suite space_axiom(const RunConfig& cfg, const SystemDescriptor& sys, Rng& rng) {
    Suite s(4, "Space");
    const auto& lat = sys.lattice;
    s.guarded("translations", [&] {
        bool homomorphism = true;
        auto vec = [&](std::size_t site) { return LatticeVector(lat, lat.site_coords(site)); };
        auto pair_ok = [&](std::size_t i, std::size_t j) {
            const auto a = vec(i), b = vec(j);
            return Operator(translation_unitary(lat, a) * translation_unitary(lat, b)) == translation_unitary(lat, a.plus(lat, b));
        };
        if (lat.size() <= 64) {
            for (std::size_t i = 0; i < lat.size(); ++i)
                for (std::size_t j = 0; j < lat.size(); ++j) homomorphism = homomorphism && pair_ok(i, j);
        } else {
            std::uniform_int_distribution<std::size_t> site(0, lat.size() - 1);
            for (int k = 0; k < 200; ++k) homomorphism = homomorphism && pair_ok(site(rng), site(rng));
        }
        s.flag("U(a)U(b) = U(a+b) exactly", homomorphism);

        bool covariant = true;
        std::uniform_int_distribution<std::size_t> site(0, lat.size() - 1);
        std::bernoulli_distribution coin(0.5);
        for (int k = 0; k < 100; ++k) {
            Region r;
            for (std::size_t x = 0; x < lat.size(); ++x)
                if (coin(rng)) r.insert(x);
            covariant = covariant && check_covariance(lat, vec(site(rng)), r);
        }
        covariant = covariant && check_covariance(lat, vec(site(rng)), sys.detector_window);
        const Lattice<double> small(1, 8, 1.0);
        for (unsigned mask = 0; mask < 256; ++mask)
            for (int a = 0; a < 8; ++a) {
                Region r;
                for (std::size_t x = 0; x < 8; ++x)
                    if (mask >> x & 1u) r.insert(x);
                covariant = covariant && check_covariance(small, LatticeVector(small, {a}), r);
            }
        s.flag("covariance U(a) E_B U(a)^dagger = E_{B+a} (random + exhaustive n=8)", covariant);
    });
    s.guarded("SU(2)", [&] {
        const std::complex<double> i(0, 1);
        double algebra = 0, unitary = 0, period = 0;
        for (int tj = 1; tj <= 5; ++tj) {
            const auto rep = spin_rep<double>(tj);
            algebra = std::max({algebra, max_abs<double>(Operator(rep.jx * rep.jy - rep.jy * rep.jx - i * rep.jz)),
                                max_abs<double>(Operator(rep.jy * rep.jz - rep.jz * rep.jy - i * rep.jx)),
                                max_abs<double>(Operator(rep.jz * rep.jx - rep.jx * rep.jz - i * rep.jy)),
                                max_abs<double>(Operator(rep.casimir() - rep.j() * (rep.j() + 1) * identity<double>(rep.dim())))});
            const std::array<double, 3> axis{0.3, -0.5, 0.8};
            const Operator u = spin_rotation<double>(rep, axis, 1.234);
            unitary = std::max(unitary, unitarity_residual<double>(u));
            const double full = tj % 2 ? 4 * EIGEN_PI : 2 * EIGEN_PI;
            period = std::max(period, max_abs<double>(Operator(spin_rotation<double>(rep, axis, full) - identity<double>(rep.dim()))));
            if (tj % 2) {
                period = std::max(period, max_abs<double>(Operator(spin_rotation<double>(rep, axis, 2 * EIGEN_PI) + identity<double>(rep.dim()))));
            }
        }
        s.residual("su(2) commutators and Casimir, j <= 5/2", algebra, 1e-12);
        s.residual("spin rotations unitary", unitary, 1e-12);
        s.residual("rotation period 4 pi (half-integer) / 2 pi (integer), U(2 pi) = -I for spinors", period, 1e-12);
    });
    s.guarded("Pauli Hamiltonian", [&] {
        const Operator h = pauli_hamiltonian<double>(lat, cfg.mass, cfg.field, cfg.mu);
        s.residual("Hamiltonian Hermitian", hermiticity_residual<double>(h), cfg.tol.herm);
        double comm = 0;
        for (int axis = 0; axis < lat.d; ++axis) {
            std::vector<int> e(std::size_t(lat.d), 0);
            e[std::size_t(axis)] = 1;
            const Operator lifted = tensor<double>(identity<double>(2), translation_unitary(lat, LatticeVector(lat, e)));
            comm = std::max(comm, max_abs<double>(Operator(h * lifted - lifted * h)));
        }
        s.residual("translation invariance ||[H, I (x) U(a)]||", comm, 1e-12);
    });
    return s;
}

Suite composite(const RunConfig& cfg, const SystemDescriptor& sys, Rng& rng) {
    Suite s(5, "Composite systems");
    const auto& tol = cfg.tol;
    s.guarded("tensor", [&] {
        double tr = 0, mixed = 0, assoc = 0;
        for (int k = 0; k < 50; ++k) {
            const auto da = uniform_dim(rng, 1, 4), db = uniform_dim(rng, 1, 4), dc = uniform_dim(rng, 1, 3);
            const Operator a = random_ginibre<double>(da, da, rng), b = random_ginibre<double>(db, db, rng);
            const Operator c = random_ginibre<double>(da, da, rng), d = random_ginibre<double>(db, db, rng);
            const Operator e = random_ginibre<double>(dc, dc, rng);
            tr = std::max(tr, std::abs(tensor<double>(a, b).trace() - a.trace() * b.trace()));
            mixed = std::max(mixed, max_abs<double>(Operator(tensor<double>(a, b) * tensor<double>(c, d) -
                                                             tensor<double>(Operator(a * c), Operator(b * d)))));
            assoc = std::max(assoc, max_abs<double>(Operator(tensor<double>(tensor<double>(a, b), e) - tensor<double>(a, tensor<double>(b, e)))));
        }
        s.residual("Tr(A (x) B) = Tr A Tr B", tr, 1e-10);
        s.residual("mixed product (A (x) B)(C (x) D) = AC (x) BD", mixed, 1e-10);
        s.residual("associativity", assoc, 1e-12);
    });
    s.guarded("partial trace", [&] {
        const auto marg = partial_trace<double>(bell::singlet(), CompositeSpace({2, 2}), 0, tol);
        s.residual("singlet marginal = I/2", max_abs<double>(Operator(marg.op() - identity<double>(2) / 2.0)), 1e-12);
        const auto spin = partial_trace<double>(sys.state, sys.hilbert, 0, tol);
        Operator plus(2, 2);
        plus.setConstant(0.5);
        s.residual("example spin marginal = |+x><+x|", max_abs<double>(Operator(spin.op() - plus)), 1e-12);
        double prod = 0;
        for (int k = 0; k < 20; ++k) {
            const auto r1 = random_density<double>(3, rng), r2 = random_density<double>(4, rng);
            const auto joint = make_density<double>(tensor<double>(r1.op(), r2.op()), tol);
            prod = std::max(prod, max_abs<double>(Operator(partial_trace<double>(joint, CompositeSpace({3, 4}), 0, tol).op() - r1.op())));
        }
        s.residual("product state marginals", prod, 1e-12);
    });
    return s;
}

long binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Suite identical_particles() {
    Suite s(6, "Bose-Fermi alternative");
    s.guarded("ranks", [&] {
        bool ok = true;
        long pairs = 0;
        std::string first_bad;
        for (std::size_t n = 1; n <= 8; ++n)
            for (std::size_t d = 1;; ++d) {
                std::size_t total = 1;
                for (std::size_t k = 0; k < n && total <= max_symmetrizer_dim; ++k) total *= d;
                if (total > max_symmetrizer_dim) break;
                const long rs = exchange_projector_trace(Statistics::boson, n, d);
                const long ra = exchange_projector_trace(Statistics::fermion, n, d);
                const bool good = rs == binomial(long(d + n - 1), long(n)) && ra == binomial(long(d), long(n));
                if (!good && first_bad.empty()) first_bad = "N=" + std::to_string(n) + " d=" + std::to_string(d);
                ok = ok && good;
                ++pairs;
            }
        s.flag("rank(P_S) = C(d+N-1, N), rank(P_A) = C(d, N) for all d^N <= 4096, N <= 8 (" + std::to_string(pairs) + " pairs)", ok,
               first_bad);
    });
    s.guarded("projectors", [&] {
        double idem = 0, exch = 0, rank = 0;
        for (std::size_t n = 2; n <= 4; ++n)
            for (std::size_t d = 2; d <= 4; ++d) {
                if (std::pow(double(d), double(n)) > 256) continue;
                const Operator ps = symmetrizer<double>(n, d), pa = antisymmetrizer<double>(n, d);
                idem = std::max({idem, max_abs<double>(Operator(ps * ps - ps)), max_abs<double>(Operator(pa * pa - pa)),
                                 hermiticity_residual<double>(ps), hermiticity_residual<double>(pa), max_abs<double>(Operator(ps * pa))});
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) {
                        const Operator w = exchange_operator<double>(n, d, i, j);
                        exch = std::max({exch, max_abs<double>(Operator(w * ps - ps)), max_abs<double>(Operator(ps * w - ps)),
                                         max_abs<double>(Operator(w * pa + pa)), max_abs<double>(Operator(pa * w + pa))});
                    }
                rank = std::max(rank, double(std::abs(projector_rank<double>(ps) - binomial(long(d + n - 1), long(n))) +
                                             std::abs(projector_rank<double>(pa) - binomial(long(d), long(n)))));
            }
        s.residual("P^2 = P, P = P^dagger, P_S P_A = 0", idem, 1e-12);
        s.residual("W P_S = P_S W = P_S, W P_A = P_A W = -P_A", exch, 1e-12);
        s.residual("dense projector trace equals binomial rank", rank, 0.0);
        s.flag("spin-1/2 fermions consistent with spin-statistics pairing",
               ExchangeSymmetry{Statistics::fermion, 2, 2}.consistent_with_spin(1) &&
                   !ExchangeSymmetry{Statistics::boson, 2, 2}.consistent_with_spin(1));
    });
    return s;
}

Suite internal(const RunConfig& cfg, const SystemDescriptor& sys, Rng& rng) {
    Suite s(7, "Internal symmetries");
    if (!sys.charge) {
        s.flag("no internal symmetry configured", true, "G_int omitted for this system");
        return s;
    }
    s.guarded("superselection", [&] {
        const auto& q = *sys.charge;
        const auto dec = sectors(q);
        std::size_t dims = 0;
        for (const auto& sec : dec.sectors) dims += sec.dim;
        s.flag("sector dimensions sum to the total", dims == std::size_t(q.dim()));

        bool equivalence = true;
        double violating = 0, invariance = 0;
        for (int k = 0; k < 40; ++k) {
            Operator a = random_hermitian<double>(q.dim(), rng);
            if (k % 2 == 0) {
                Operator block = Operator::Zero(q.dim(), q.dim());
                for (const auto& sec : dec.sectors) block += sec.projector * a * sec.projector;
                a = block;
            }
            const bool by_blocks = check_superselection<double>(a, dec);
            const bool by_commutator = u1_commutator_max<double>(a, q) <= 1e-9;
            equivalence = equivalence && by_blocks == by_commutator && by_blocks == (k % 2 == 0 || dec.sectors.size() == 1);

            if (k % 2 == 0) {
                const Operator g = random_ginibre<double>(q.dim(), q.dim(), rng);
                Operator rho = Operator::Zero(q.dim(), q.dim());
                for (const auto& sec : dec.sectors) rho += sec.projector * g * g.adjoint() * sec.projector;
                rho /= rho.trace().real();
                const auto state = make_density<double>(hermitian_part<double>(rho), cfg.tol);
                Operator off = random_hermitian<double>(q.dim(), rng);
                for (const auto& sec : dec.sectors) off -= sec.projector * off * sec.projector;
                violating = std::max(violating, std::abs(expectation<double>(state, off, cfg.tol)));

                const Operator u = propagator_const<double>(a, 0.77, cfg.tol).u;
                for (const auto& sec : dec.sectors)
                    invariance = std::max(invariance, max_abs<double>(Operator(u * sec.projector * u.adjoint() - sec.projector)));
            }
        }
        s.flag("block criterion <=> commutation with U(tau) on 16-point grid", equivalence);
        s.residual("charge-violating observables vanish on sector-diagonal states", violating, 1e-10);
        s.residual("sector projectors invariant under superselection-respecting dynamics", invariance, 1e-10);
    });
    s.guarded("commutation with space", [&] {
        const auto& q = *sys.charge;
        const CompositeLayout layout{CompositeSpace({std::size_t(q.dim()), 2, sys.lattice.size()}), 0, 1, 2};
        std::vector<Operator> translations, rotations;
        for (int axis = 0; axis < sys.lattice.d; ++axis) {
            std::vector<int> e(std::size_t(sys.lattice.d), 0);
            e[std::size_t(axis)] = 1;
            translations.push_back(translation_unitary(sys.lattice, LatticeVector(sys.lattice, e)));
        }
        const auto half = spin_rep<double>(1);
        rotations.push_back(spin_rotation<double>(half, {0.0, 0.0, 1.0}, 0.9));
        rotations.push_back(spin_rotation<double>(half, {1.0, 1.0, 0.0}, 2.1));
        double worst = 0;
        std::uniform_real_distribution<double> angle(0, 2 * EIGEN_PI);
        for (int k = 0; k < 10; ++k) {
            const auto c = check_commutes_with_space_factor<double>(u1_unitary(q, angle(rng)), layout, translations, rotations);
            worst = std::max(worst, c.max_residual);
        }
        s.residual("[U(tau), U(a)] = [U(tau), U(R)] = 0 on the composite", worst, 1e-12);
    });
    return s;
}

}  // namespace

json run_verify(const RunConfig& cfg) {
    Rng rng(cfg.seed);
    ExampleParams params;
    params.lattice = Lattice<double>(cfg.d, cfg.n, cfg.dx);
    params.packet_width = cfg.packet_width;
    params.center = cfg.center1;
    params.analyzer_phi = cfg.angles[0];
    params.charges = cfg.charges;
    const SystemDescriptor sys = make_example_system(params, cfg.tol);

    std::vector<Suite> suites;
    suites.push_back(hilbert_space(cfg, sys, rng));
    suites.push_back(measurements(cfg, sys, rng));
    suites.push_back(time_evolution(cfg, sys));
    suites.push_back(space_axiom(cfg, sys, rng));
    suites.push_back(composite(cfg, sys, rng));
    suites.push_back(identical_particles());
    suites.push_back(internal(cfg, sys, rng));

    json axioms = json::array();
    bool all = true;
    for (const auto& s : suites) {
        axioms.push_back(s.to_json());
        all = all && s.passed();
    }
    json system = {{"hilbert_factors", sys.hilbert.factors},
                   {"lattice", {{"d", sys.lattice.d}, {"n", sys.lattice.n}, {"dx", sys.lattice.dx}}},
                   {"representations", sys.representations},
                   {"outcomes", sys.povm.space.labels()}};
    return {{"seed", cfg.seed}, {"system", system}, {"axioms", axioms}, {"passed", all}};
}

int cmd_verify(const RunConfig& cfg, bool as_json, std::ostream& out) {
    const json report = run_verify(cfg);
    if (as_json) {
        out << report.dump(2) << '\n';
    } else {
        out << "seed " << cfg.seed << '\n';
        for (const auto& a : report.at("axioms")) {
            out << "axiom " << a.at("axiom").get<int>() << " (" << a.at("name").get<std::string>() << "): "
                << (a.at("passed").get<bool>() ? "PASS" : "FAIL") << '\n';
            for (const auto& c : a.at("checks")) {
                out << "  [" << (c.at("passed").get<bool>() ? "pass" : "FAIL") << "] " << c.at("name").get<std::string>();
                if (c.contains("max_residual")) out << "  residual " << format_number(c.at("max_residual").get<double>());
                if (c.contains("detail")) out << "  (" << c.at("detail").get<std::string>() << ")";
                out << '\n';
            }
        }
        out << (report.at("passed").get<bool>() ? "all axiom suites passed" : "axiom suite failures") << '\n';
    }
    return report.at("passed").get<bool>() ? exit_ok : exit_check_failed;
}

}  // namespace qax::cli
