#include "qax/system.hpp"

#include "qax/bell.hpp"

namespace qax {

std::vector<std::string> SystemDescriptor::consistency_problems() const {
    std::vector<std::string> out;
    const auto dim = Eigen::Index(hilbert.total());
    if (hilbert.factors.size() != 2 || hilbert.factors[0] != 2 || hilbert.factors[1] != lattice.size())
        out.push_back("Hilbert layout is not spin (x) lattice");
    if (state.dim() != dim) out.push_back("state dimension differs from Hilbert space");
    if (povm.dim() != dim) out.push_back("POVM dimension differs from Hilbert space");
    if (instrument.dim() != dim) out.push_back("instrument dimension differs from Hilbert space");
    if (povm.space.labels() != instrument.space.labels()) out.push_back("POVM and instrument outcome spaces differ");
    if (spatial_packet.size() != Eigen::Index(lattice.size())) out.push_back("spatial packet does not match lattice");
    for (std::size_t i = 0; i < povm.effects.size() && i < instrument.kraus.size(); ++i)
        if (max_abs<double>(Operator(instrument.effect(i) - povm.effects[i])) > 1e-9)
            out.push_back("instrument does not realize the POVM for outcome '" + povm.space.labels()[i] + "'");
    return out;
}

SystemDescriptor make_example_system(const ExampleParams& p, const Tolerances<double>& tol) {
    SystemDescriptor sys;
    sys.lattice = p.lattice;
    sys.hilbert = CompositeSpace({2, p.lattice.size()});
    sys.representations = {"translations T^" + std::to_string(p.lattice.d) + " (periodic lattice)", "SU(2) spin-1/2"};

    StateVector up_x(2);
    up_x << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    sys.spatial_packet = bell::gaussian_packet(p.lattice, p.packet_width, p.center);
    sys.state = DensityOperator<double>::pure(tensor<double>(up_x, sys.spatial_packet));

    sys.detector_window = bell::centered_box(p.lattice, p.center, std::max(1, p.lattice.n / 2));
    const bell::ParticleSpace ps{p.lattice};
    sys.povm = pvm_from_observable<double>(bell::localized_observable(ps, {p.analyzer_phi, sys.detector_window}), tol);
    sys.instrument = luders_instrument<double>(sys.povm, tol);

    if (!p.charges.empty()) {
        sys.charge = ChargeOperator<double>::from_charges(p.charges);
        sys.representations.push_back("U(1) internal charge on a separate factor");
    }
    return sys;
}

}  // namespace qax
