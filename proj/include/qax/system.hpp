#pragma once

// The assembled data of one quantum system: Hilbert space layout,
// representations, state, outcome space with its automorphisms, POVM and
// instrument.  The default assembly is the discretized spin-1/2 particle.

#include "qax/internal_symmetry.hpp"
#include "qax/measurement.hpp"
#include "qax/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qax {

struct SystemDescriptor {
    CompositeSpace hilbert{{2, 2}};  // spin (x) position
    Lattice<double> lattice;
    std::vector<std::string> representations;
    DensityOperator<double> state = DensityOperator<double>::maximally_mixed(4);
    StateVector spatial_packet;
    Region detector_window;
    Povm<double> povm;
    Instrument<double> instrument;
    std::optional<ChargeOperator<double>> charge;

    /// alpha_a on the outcome sigma-algebra: the detector window shifted by a.
    Region shifted_window(const LatticeVector& a) const { return translate_region(lattice, detector_window, a); }

    /// Cross-module consistency; returns the list of problems (empty if none).
    std::vector<std::string> consistency_problems() const;
};

struct ExampleParams {
    Lattice<double> lattice{1, 32, 1.0};
    double packet_width = 2.0;
    std::vector<int> center{8};
    double analyzer_phi = 0.0;
    std::vector<long> charges{0, 1};  // empty: no internal symmetry
};

/// Spin up along x times a Gaussian packet, measured by a localized sigma.m
/// detector covering half the lattice around the packet.
SystemDescriptor make_example_system(const ExampleParams& params, const Tolerances<double>& tol = {});

}  // namespace qax
