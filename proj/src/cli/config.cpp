#include "qax/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qax::cli {

using nlohmann::json;

namespace {

template <class T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::vector<int> center_from(const json& v, int d, const char* key) {
    std::vector<int> c;
    if (v.is_number_integer()) {
        c.assign(std::size_t(d), v.get<int>());
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must hold integers");
            c.push_back(x.get<int>());
        }
    } else {
        throw ConfigError(std::string("config key '") + key + "' must be an integer or an array of integers");
    }
    if (int(c.size()) != d) throw ConfigError(std::string("config key '") + key + "' needs d components");
    return c;
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{
        "d", "n", "dx", "packet_width", "center1", "center2", "angles", "window_sizes", "mass", "field", "mu",
        "time_unit", "charges", "tol_trace", "tol_herm", "tol_psd", "tol_recon", "tol_degen", "tol_unitary",
        "tol_prob", "format", "seed", "povm", "instrument"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    RunConfig c;
    if (j.contains("d")) c.d = get<int>(j, "d");
    if (j.contains("n")) c.n = get<int>(j, "n");
    if (j.contains("dx")) c.dx = get<double>(j, "dx");
    if (c.d < 1 || c.d > 3) throw ConfigError("d must be 1, 2 or 3");
    if (c.n < 2) throw ConfigError("n must be >= 2");
    if (!(c.dx > 0)) throw ConfigError("dx must be positive");

    if (j.contains("packet_width")) c.packet_width = get<double>(j, "packet_width");
    if (!(c.packet_width > 0)) throw ConfigError("packet_width must be positive");
    c.center1 = j.contains("center1") ? center_from(j.at("center1"), c.d, "center1") : std::vector<int>(std::size_t(c.d), c.n / 4);
    c.center2 = j.contains("center2") ? center_from(j.at("center2"), c.d, "center2") : std::vector<int>(std::size_t(c.d), 3 * c.n / 4);

    if (j.contains("angles")) {
        const auto a = get<std::vector<double>>(j, "angles");
        if (a.size() != 4) throw ConfigError("angles must list a, a', b, b'");
        std::copy(a.begin(), a.end(), c.angles.begin());
    }
    if (j.contains("window_sizes")) {
        c.window_sizes = get<std::vector<int>>(j, "window_sizes");
        for (int k : c.window_sizes)
            if (k < 0 || k > c.n) throw ConfigError("window_sizes entries must lie in [0, n]");
    }
    if (j.contains("mass")) c.mass = get<double>(j, "mass");
    if (!(c.mass > 0)) throw ConfigError("mass must be positive");
    if (j.contains("field")) {
        const auto f = get<std::vector<double>>(j, "field");
        if (f.size() != 3) throw ConfigError("field must have 3 components");
        std::copy(f.begin(), f.end(), c.field.begin());
    }
    if (j.contains("mu")) c.mu = get<double>(j, "mu");
    if (j.contains("time_unit")) c.time_unit = get<double>(j, "time_unit");
    if (j.contains("charges")) c.charges = get<std::vector<long>>(j, "charges");

    const std::pair<const char*, double*> tols[] = {
        {"tol_trace", &c.tol.trace}, {"tol_herm", &c.tol.herm},       {"tol_psd", &c.tol.psd}, {"tol_recon", &c.tol.recon},
        {"tol_degen", &c.tol.degen}, {"tol_unitary", &c.tol.unitary}, {"tol_prob", &c.tol.prob}};
    for (const auto& [key, slot] : tols) {
        if (!j.contains(key)) continue;
        *slot = get<double>(j, key);
        if (!(*slot >= 0)) throw ConfigError(std::string(key) + " must be non-negative");
    }

    if (j.contains("format")) c.format = get<std::string>(j, "format");
    if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
    if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
    if (j.contains("povm")) c.povm = j.at("povm");
    if (j.contains("instrument")) c.instrument = j.at("instrument");
    return c;
}

void apply_seed_override(RunConfig& cfg) {
    if (const char* s = std::getenv("QM_SEED"); s && *s) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (*end != '\0') throw ConfigError(std::string("QM_SEED is not an unsigned integer: ") + s);
        cfg.seed = v;
    }
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw ConfigError("config parse error in '" + path + "': " + e.what());
        }
        cfg = parse_config(j);
    }
    apply_seed_override(cfg);
    return cfg;
}

}  // namespace qax::cli
