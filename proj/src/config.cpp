#include "kkwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kkwave/io.hpp"

namespace kkwave {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value +
                          "'");
    }
}

std::size_t to_size(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v <= 0.0 || v != std::floor(v))
        throw ConfigError("config: key '" + key + "' needs a positive integer");
    return static_cast<std::size_t>(v);
}

int to_int(const std::string& key, const std::string& value) {
    return static_cast<int>(to_size(key, value));
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError("config: key '" + key + "' needs true/false");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"grid.x_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.x_min = to_double(k, v); }},
        {"grid.x_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.x_max = to_double(k, v); }},
        {"grid.n", [](RunConfig& c, const std::string& k, const std::string& v) { c.n = to_size(k, v); }},
        {"packet.d", [](RunConfig& c, const std::string& k, const std::string& v) { c.d = to_double(k, v); }},
        {"packet.w", [](RunConfig& c, const std::string& k, const std::string& v) { c.w = to_double(k, v); }},
        {"packet.p0", [](RunConfig& c, const std::string& k, const std::string& v) { c.p0 = to_double(k, v); }},
        {"potential.kind", [](RunConfig& c, const std::string&, const std::string& v) { c.potential_kind = v; }},
        {"potential.v0", [](RunConfig& c, const std::string& k, const std::string& v) { c.v0 = to_double(k, v); }},
        {"potential.alpha", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha = to_double(k, v); }},
        {"potential.n", [](RunConfig& c, const std::string& k, const std::string& v) { c.pt_n = to_int(k, v); }},
        {"potential.file", [](RunConfig& c, const std::string&, const std::string& v) { c.potential_file = v; }},
        {"potential.envelope", [](RunConfig& c, const std::string& k, const std::string& v) { c.envelope = to_bool(k, v); }},
        {"potential.envelope_b", [](RunConfig& c, const std::string& k, const std::string& v) { c.envelope_b = to_double(k, v); }},
        {"potential.envelope_order", [](RunConfig& c, const std::string& k, const std::string& v) { c.envelope_order = to_int(k, v); }},
        {"force.kind", [](RunConfig& c, const std::string&, const std::string& v) { c.force_kind = v; }},
        {"force.f0", [](RunConfig& c, const std::string& k, const std::string& v) { c.f0 = to_double(k, v); }},
        {"force.period", [](RunConfig& c, const std::string& k, const std::string& v) { c.period = to_double(k, v); }},
        {"force.file", [](RunConfig& c, const std::string&, const std::string& v) { c.force_file = v; }},
        {"force.x_init", [](RunConfig& c, const std::string& k, const std::string& v) { c.tailored_x_init = to_double(k, v); }},
        {"force.p_init", [](RunConfig& c, const std::string& k, const std::string& v) { c.tailored_p_init = to_double(k, v); }},
        {"solver.engine", [](RunConfig& c, const std::string&, const std::string& v) { c.engine = v; }},
        {"solver.dt", [](RunConfig& c, const std::string& k, const std::string& v) { c.dt = to_double(k, v); }},
        {"solver.t_final", [](RunConfig& c, const std::string& k, const std::string& v) { c.t_final = to_double(k, v); }},
        {"solver.strobe", [](RunConfig& c, const std::string& k, const std::string& v) { c.strobe = to_double(k, v); }},
        {"probe.d", [](RunConfig& c, const std::string& k, const std::string& v) { c.probe_d = to_double(k, v); }},
        {"probe.v_d", [](RunConfig& c, const std::string& k, const std::string& v) { c.probe_v_d = to_double(k, v); }},
        {"window.x_w", [](RunConfig& c, const std::string& k, const std::string& v) { c.window_x_w = to_double(k, v); }},
        {"window.t_w", [](RunConfig& c, const std::string& k, const std::string& v) { c.window_t_w = to_double(k, v); }},
        {"output.dir", [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
    };
    return table;
}

std::string known_keys() {
    std::string s;
    for (const auto& [k, _] : setters()) {
        if (!s.empty()) s += ", ";
        s += k;
    }
    return s;
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("config: unknown key '" + key +
                          "'. Accepted keys: " + known_keys());
    it->second(config, key, value);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    RunConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate(config);
    return config;
}

void apply_overrides(RunConfig& config, const std::vector<std::string>& assignments) {
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: override '" + a + "' is not key=value");
        apply_setting(config, trim(a.substr(0, eq)), trim(a.substr(eq + 1)));
    }
    validate(config);
}

void validate(const RunConfig& config) {
    if (!(config.x_max > config.x_min))
        throw ConfigError("config: grid.x_max must exceed grid.x_min");
    if (config.n < 16 || (config.n & (config.n - 1)) != 0)
        throw ConfigError("config: grid.n must be a power of two >= 16");
    if (!(config.w > 0.0)) throw ConfigError("config: packet.w must be positive");
    if (!(config.dt > 0.0) || !(config.t_final > 0.0))
        throw ConfigError("config: solver.dt and solver.t_final must be positive");
    if (!(config.strobe > 0.0)) throw ConfigError("config: solver.strobe must be positive");

    static const std::vector<std::string> pk = {"none", "gaussian", "single_pole",
                                                "poschl_teller", "tabulated"};
    if (std::find(pk.begin(), pk.end(), config.potential_kind) == pk.end())
        throw ConfigError("config: potential.kind must be one of none, gaussian, "
                          "single_pole, poschl_teller, tabulated");
    if (config.potential_kind == "tabulated" && config.potential_file.empty())
        throw ConfigError("config: potential.kind=tabulated needs potential.file");

    static const std::vector<std::string> fk = {"none", "cosine", "tabulated",
                                                "tailored"};
    if (std::find(fk.begin(), fk.end(), config.force_kind) == fk.end())
        throw ConfigError(
            "config: force.kind must be one of none, cosine, tabulated, tailored");
    if (config.force_kind == "tabulated" && config.force_file.empty())
        throw ConfigError("config: force.kind=tabulated needs force.file");
    if (config.force_kind == "tailored" && config.potential_kind == "none")
        throw ConfigError("config: force.kind=tailored needs a potential");

    static const std::vector<std::string> eng = {"split_step", "momentum", "kh_frame"};
    if (std::find(eng.begin(), eng.end(), config.engine) == eng.end())
        throw ConfigError(
            "config: solver.engine must be one of split_step, momentum, kh_frame");
}

PotentialSpec potential_from(const RunConfig& config) {
    PotentialSpec spec;
    if (config.potential_kind == "gaussian") {
        spec.shape = GaussianBarrier{config.v0, config.alpha};
    } else if (config.potential_kind == "single_pole") {
        spec.shape = SinglePoleKK{config.v0, config.alpha};
    } else if (config.potential_kind == "poschl_teller") {
        spec.shape = PoschlTeller{config.pt_n};
    } else if (config.potential_kind == "tabulated") {
        spec.shape = load_tabulated_potential_csv(config.potential_file);
    } else {
        spec.shape = TabulatedPotential{};  // evaluates to zero everywhere
    }
    if (config.envelope)
        spec.envelope = SuperGaussianEnvelope{config.envelope_b, config.envelope_order};
    return spec;
}

ForceSpec force_from(const RunConfig& config) {
    if (config.force_kind == "cosine")
        return ForceSpec{CosinePulse{config.f0, config.period}};
    if (config.force_kind == "tabulated")
        return ForceSpec{load_tabulated_force_csv(config.force_file)};
    if (config.force_kind == "tailored")
        return tailored_force(potential_from(config), config.tailored_x_init,
                              config.tailored_p_init, config.t_final, config.dt / 4.0);
    return ForceSpec{ZeroForce{}};
}

SpatialGrid grid_from(const RunConfig& config) {
    return make_grid(config.x_min, config.x_max, config.n);
}

std::vector<std::pair<std::string, std::string>> manifest_of(const RunConfig& config) {
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    std::vector<std::pair<std::string, std::string>> m = {
        {"grid.x_min", num(config.x_min)},
        {"grid.x_max", num(config.x_max)},
        {"grid.n", std::to_string(config.n)},
        {"packet.d", num(config.d)},
        {"packet.w", num(config.w)},
        {"packet.p0", num(config.p0)},
        {"potential.kind", config.potential_kind},
        {"potential.v0", num(config.v0)},
        {"potential.alpha", num(config.alpha)},
        {"potential.n", std::to_string(config.pt_n)},
        {"potential.envelope", config.envelope ? "true" : "false"},
        {"potential.envelope_b", num(config.envelope_b)},
        {"potential.envelope_order", std::to_string(config.envelope_order)},
        {"force.kind", config.force_kind},
        {"force.f0", num(config.f0)},
        {"force.period", num(config.period)},
        {"force.x_init", num(config.tailored_x_init)},
        {"force.p_init", num(config.tailored_p_init)},
        {"solver.engine", config.engine},
        {"solver.dt", num(config.dt)},
        {"solver.t_final", num(config.t_final)},
        {"solver.strobe", num(config.strobe)},
        {"probe.d", num(config.probe_d)},
        {"probe.v_d", num(config.probe_v_d)},
        {"window.x_w", num(config.window_x_w)},
        {"window.t_w", num(config.window_t_w)},
        {"output.dir", config.out_dir},
        {"threads", "1"},
    };
    if (!config.potential_file.empty()) m.push_back({"potential.file", config.potential_file});
    if (!config.force_file.empty()) m.push_back({"force.file", config.force_file});
    return m;
}

}  // namespace kkwave
