#pragma once

// Flat JSON run configuration shared by every subcommand.

#include "qax/linalg.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qax::cli {

class ConfigError : public Error {
  public:
    using Error::Error;
};

struct RunConfig {
    // lattice
    int d = 1;
    int n = 32;
    double dx = 1.0;
    // packets
    double packet_width = 2.0;
    std::vector<int> center1{8};
    std::vector<int> center2{24};
    // CHSH analyzer angles a, a', b, b'
    std::array<double, 4> angles{0.0, -1.5707963267948966, 2.356194490192345, 0.7853981633974483};
    // window family: box side lengths; empty means 0..n
    std::vector<int> window_sizes;
    // Pauli Hamiltonian
    double mass = 1.0;
    std::array<double, 3> field{0.0, 0.0, 1.0};
    double mu = 0.5;
    double time_unit = 1.0;  // display scale for the t column
    // internal symmetry charges on a separate factor
    std::vector<long> charges{0, 1};

    Tolerances<double> tol;
    std::string format = "csv";
    std::uint64_t seed = 20240611;

    std::optional<nlohmann::json> povm;
    std::optional<nlohmann::json> instrument;
};

/// Unknown keys and out-of-range values raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);

/// Reads and parses a config file; an empty path gives the defaults.  The
/// QM_SEED environment variable, when set, overrides the seed.
RunConfig load_config(const std::string& path);

void apply_seed_override(RunConfig& cfg);

}  // namespace qax::cli
