#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "table.hpp"

namespace wqed {

TwoAtomSystem TwoAtomSystem_from(const RunConfig& c) {
    return {{c.omega1, c.tau1, c.gamma_ng1}, {c.omega2, c.tau2, c.gamma_ng2}, c.g};
}

TwoAtomSystem RunConfig::system() const {
    const TwoAtomSystem sys = TwoAtomSystem_from(*this);
    validate(sys);
    const double gbar = sys.gamma_bar();
    if (std::abs(gbar - 1.0) > 1e-9)
        throw std::invalid_argument(
            "tau1/tau2 must satisfy (1/tau1 + 1/tau2)/2 = 1 so inputs are in gammabar units");
    if (k_count < 2 || delta_count < 2 || x_count < 2)
        throw std::invalid_argument("grid counts must be at least 2");
    if (!(k_max > k_min) || !(delta_max > 0.0) || x_max < 0.0)
        throw std::invalid_argument("grid ranges must be nonempty");
    return sys;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    auto put = [&os](const char* k, double v) { os << k << "=" << format_double(v) << ";"; };
    put("omega1", omega1);
    put("omega2", omega2);
    put("tau1", tau1);
    put("tau2", tau2);
    put("gamma_ng1", gamma_ng1);
    put("gamma_ng2", gamma_ng2);
    put("g", g);
    put("k_min", k_min);
    put("k_max", k_max);
    os << "k_count=" << k_count << ";";
    put("e_total", e_total);
    put("delta_max", delta_max);
    os << "delta_count=" << delta_count << ";";
    put("k1", k1);
    put("k2", k2);
    put("x_max", x_max);
    os << "x_count=" << x_count << ";";
    os << "preset=" << preset << ";format=" << format << ";";
    return os.str();
}

std::string RunConfig::config_hash() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical())));
    return buf;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    auto detuned = [&cfg](double omega_d) {
        cfg.omega1 = omega_d;
        cfg.omega2 = -omega_d;
        cfg.tau1 = cfg.tau2 = 1.0;
        cfg.gamma_ng1 = cfg.gamma_ng2 = 0.0;
        cfg.g = 0.0;
    };
    if (name == "fig1a") { detuned(1.0); cfg.e_total = 3.0; }
    else if (name == "fig1b") { detuned(0.5); cfg.e_total = 3.0; }
    else if (name == "fig1c") { detuned(0.0); cfg.e_total = 3.0; }
    else if (name == "fig1d") { detuned(1.0); cfg.e_total = 0.0; }
    else if (name == "fig2a") { detuned(2.0); cfg.k1 = 2.0; cfg.k2 = 0.0; }
    else if (name == "fig2b") { detuned(6.0); cfg.k1 = 6.0; cfg.k2 = -5.75; }
    else if (name == "fig2c") { detuned(0.75); cfg.k1 = 0.75; cfg.k2 = 0.0; }
    else throw std::invalid_argument("unknown preset: " + name);
    cfg.preset = name;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&value, &key]() {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            throw std::invalid_argument("bad numeric value for " + key + ": " + value);
        return v;
    };
    if (key == "preset") apply_preset(cfg, value);
    else if (key == "omega1") cfg.omega1 = num();
    else if (key == "omega2") cfg.omega2 = num();
    else if (key == "omega_d") { const double d = num(); cfg.omega1 = d; cfg.omega2 = -d; }
    else if (key == "tau1") cfg.tau1 = num();
    else if (key == "tau2") cfg.tau2 = num();
    else if (key == "gamma_ng1") cfg.gamma_ng1 = num();
    else if (key == "gamma_ng2") cfg.gamma_ng2 = num();
    else if (key == "gamma_ng") cfg.gamma_ng1 = cfg.gamma_ng2 = num();
    else if (key == "g") cfg.g = num();
    else if (key == "k_min") cfg.k_min = num();
    else if (key == "k_max") cfg.k_max = num();
    else if (key == "k_count") cfg.k_count = static_cast<int>(num());
    else if (key == "e_total") cfg.e_total = num();
    else if (key == "delta_max") cfg.delta_max = num();
    else if (key == "delta_count") cfg.delta_count = static_cast<int>(num());
    else if (key == "k1") cfg.k1 = num();
    else if (key == "k2") cfg.k2 = num();
    else if (key == "x_max") cfg.x_max = num();
    else if (key == "x_count") cfg.x_count = static_cast<int>(num());
    else if (key == "out") cfg.out_path = value;
    else if (key == "format") cfg.format = value;
    else if (key == "scenarios") cfg.scenarios_path = value;
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace wqed
