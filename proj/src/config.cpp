#include "geonium/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace geonium {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("invalid numeric value for " + key + ": '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("invalid integer value for " + key + ": '" + v + "'");
    }
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string format_complex(cd z) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

cd parse_complex(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw ConfigError("empty complex value");
    if (s.back() != 'j' && s.back() != 'J') {
        // plain real
        std::size_t pos = 0;
        double re = std::stod(s, &pos);
        if (pos != s.size()) throw ConfigError("invalid complex value '" + text + "'");
        return {re, 0.0};
    }
    std::string body = s.substr(0, s.size() - 1);
    // Locate the sign separating real and imaginary parts: the last '+'/'-'
    // that is not an exponent sign and not the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        char ch = body[i];
        if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            // pure imaginary, e.g. "-2.4j" or "j"
            if (body.empty() || body == "+" ) return {0.0, 1.0};
            if (body == "-") return {0.0, -1.0};
            std::size_t pos = 0;
            double im = std::stod(body, &pos);
            if (pos != body.size()) throw std::invalid_argument(body);
            return {0.0, im};
        }
        std::size_t pos = 0;
        double re = std::stod(body.substr(0, split), &pos);
        if (pos != split) throw std::invalid_argument(body);
        std::string imtext = body.substr(split);
        if (imtext == "+") return {re, 1.0};
        if (imtext == "-") return {re, -1.0};
        double im = std::stod(imtext, &pos);
        if (pos != imtext.size()) throw std::invalid_argument(imtext);
        return {re, im};
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("invalid complex value '" + text + "'");
    }
}

// ---------------------------------------------------------------------------

void validate(const TrapParameters& trap) {
    if (trap.charge <= 0.0) throw ConfigError("trap.e must be positive");
    if (trap.mass <= 0.0) throw ConfigError("trap.m0 must be positive");
    if (trap.light_speed <= 0.0) throw ConfigError("trap.c must be positive");
    if (trap.potential <= 0.0) throw ConfigError("trap.V0 must be positive");
    if (trap.trap_size <= 0.0) throw ConfigError("trap.d must be positive");
    if (trap.field <= 0.0) throw ConfigError("trap.B must be positive");
}

void validate(const ModeFrequencies& freq) {
    if (freq.omega_z <= 0.0) throw ConfigError("frequencies.omega_z must be positive");
    if (freq.omega_c != 0.0) {
        if (freq.omega_c < 0.0) throw ConfigError("frequencies.omega_c must be positive");
        if (freq.omega_z > freq.omega_c)
            throw ConfigError("hierarchy violation: frequencies.omega_z exceeds frequencies.omega_c");
        if (freq.omega_m != 0.0) {
            double expect = freq.omega_z * freq.omega_z / (2.0 * freq.omega_c);
            if (std::abs(freq.omega_m - expect) > 1e-9 * expect)
                throw ConfigError("frequencies.omega_m inconsistent with omega_z^2/(2 omega_c)");
        }
    }
}

void validate(const DriveConfig& drive) {
    if (drive.wavenumber < 0.0) throw ConfigError("drive.k must be non-negative");
    if (drive.wavenumber > 0.0 && drive.kappa_sq <= 0.0)
        throw ConfigError("drive.kappa_sq must be positive when drive.k is positive");
    if (drive.kappa_sq < 0.0) throw ConfigError("drive.kappa_sq must be non-negative");
}

void validate(const DissipationConfig& diss) {
    if (diss.gamma_c < 0.0) throw ConfigError("dissipation.gamma_c must be non-negative");
    if (diss.Gamma < 0.0) throw ConfigError("dissipation.Gamma must be non-negative");
    if (diss.N_th < 0.0) throw ConfigError("dissipation.N_th must be non-negative");
    if (diss.temperature && *diss.temperature < 0.0)
        throw ConfigError("dissipation.T must be non-negative");
    if (diss.d44_scale <= 0.0) throw ConfigError("dissipation.d44_scale must be positive");
}

void validate(const NumericsConfig& num) {
    if (num.grid_points < 2) throw ConfigError("numerics.grid_points must be at least 2");
    if (num.extent <= 0.0) throw ConfigError("numerics.extent must be positive");
    if (num.fock_max < 0) throw ConfigError("numerics.fock_max must be non-negative");
    if (num.abs_tol <= 0.0) throw ConfigError("numerics.abs_tol must be positive");
    if (num.rel_tol <= 0.0) throw ConfigError("numerics.rel_tol must be positive");
    if (num.max_subdiv < 1) throw ConfigError("numerics.max_subdiv must be positive");
    if (num.half_width <= 0.0) throw ConfigError("numerics.half_width must be positive");
    if (num.spectrum_points < 3) throw ConfigError("numerics.spectrum_points must be at least 3");
    if (num.peak_prominence <= 0.0) throw ConfigError("numerics.prominence must be positive");
}

void validate(const ModelConfig& config) {
    if (config.trap) validate(*config.trap);
    validate(config.frequencies);
    validate(config.drive);
    validate(config.dissipation);
    validate(config.numerics);
    // Detuning consistency when both omega_c and Omega are known.
    if (config.frequencies.omega_c > 0.0 && config.drive.drive_frequency > 0.0) {
        double expect = config.frequencies.omega_c - config.drive.drive_frequency;
        double scale = std::max({std::abs(expect), config.frequencies.omega_c, 1.0});
        if (std::abs(config.detuning - expect) > 1e-9 * scale)
            throw ConfigError("drive.Delta inconsistent with frequencies.omega_c - drive.Omega");
    }
    // Coupling identity when the full derivation chain is present.
    if (config.frequencies.omega_c > 0.0 && config.drive.chi > 0.0 &&
        std::abs(config.drive.epsilon) > 0.0) {
        double lhs = 2.0 * config.frequencies.omega_c * config.drive.chi;
        double rhs = std::norm(config.drive.epsilon);
        if (std::abs(lhs - rhs) > 1e-9 * rhs)
            throw ConfigError("drive.chi inconsistent with the identity 2 omega_c chi = |epsilon|^2");
    }
}

// ---------------------------------------------------------------------------

ModelConfig parse_config(const std::string& text) {
    ModelConfig cfg;
    TrapParameters trap;
    bool has_trap = false;
    bool varphi_given = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << lineno << ": expected key = value";
            throw ConfigError(os.str());
        }
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        std::size_t hash = val.find('#');
        if (hash != std::string::npos) val = trim(val.substr(0, hash));

        if (key == "trap.e") { trap.charge = parse_double(key, val); has_trap = true; }
        else if (key == "trap.m0") { trap.mass = parse_double(key, val); has_trap = true; }
        else if (key == "trap.c") { trap.light_speed = parse_double(key, val); has_trap = true; }
        else if (key == "trap.V0") { trap.potential = parse_double(key, val); has_trap = true; }
        else if (key == "trap.d") { trap.trap_size = parse_double(key, val); has_trap = true; }
        else if (key == "trap.B") { trap.field = parse_double(key, val); has_trap = true; }
        else if (key == "frequencies.omega_z") cfg.frequencies.omega_z = parse_double(key, val);
        else if (key == "frequencies.omega_c") cfg.frequencies.omega_c = parse_double(key, val);
        else if (key == "frequencies.omega_m") cfg.frequencies.omega_m = parse_double(key, val);
        else if (key == "drive.alpha") cfg.drive.alpha = parse_complex(val);
        else if (key == "drive.epsilon") cfg.drive.epsilon = parse_complex(val);
        else if (key == "drive.chi") cfg.drive.chi = parse_double(key, val);
        else if (key == "drive.k") cfg.drive.wavenumber = parse_double(key, val);
        else if (key == "drive.phi") cfg.drive.standing_phase = parse_double(key, val);
        else if (key == "drive.Omega") cfg.drive.drive_frequency = parse_double(key, val);
        else if (key == "drive.kappa_sq") cfg.drive.kappa_sq = parse_double(key, val);
        else if (key == "drive.varphi") { cfg.drive.varphi = parse_double(key, val); varphi_given = true; }
        else if (key == "drive.Delta") cfg.detuning = parse_double(key, val);
        else if (key == "dissipation.gamma_c") cfg.dissipation.gamma_c = parse_double(key, val);
        else if (key == "dissipation.Gamma") cfg.dissipation.Gamma = parse_double(key, val);
        else if (key == "dissipation.N_th") cfg.dissipation.N_th = parse_double(key, val);
        else if (key == "dissipation.T") cfg.dissipation.temperature = parse_double(key, val);
        else if (key == "dissipation.f") cfg.dissipation.axial_drive = parse_double(key, val);
        else if (key == "dissipation.d44_scale") cfg.dissipation.d44_scale = parse_double(key, val);
        else if (key == "numerics.grid_points") cfg.numerics.grid_points = parse_int(key, val);
        else if (key == "numerics.extent") cfg.numerics.extent = parse_double(key, val);
        else if (key == "numerics.fock_max") cfg.numerics.fock_max = parse_int(key, val);
        else if (key == "numerics.abs_tol") cfg.numerics.abs_tol = parse_double(key, val);
        else if (key == "numerics.rel_tol") cfg.numerics.rel_tol = parse_double(key, val);
        else if (key == "numerics.max_subdiv") cfg.numerics.max_subdiv = parse_int(key, val);
        else if (key == "numerics.half_width") cfg.numerics.half_width = parse_double(key, val);
        else if (key == "numerics.spectrum_points") cfg.numerics.spectrum_points = parse_int(key, val);
        else if (key == "numerics.prominence") cfg.numerics.peak_prominence = parse_double(key, val);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (has_trap) cfg.trap = trap;
    if (!varphi_given && std::abs(cfg.drive.epsilon) > 0.0)
        cfg.drive.varphi = std::arg(cfg.drive.epsilon);
    return cfg;
}

ModelConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

std::string serialize_config(const ModelConfig& config) {
    std::ostringstream os;
    os << "# geonium model configuration\n";
    if (config.trap) {
        os << "trap.e = " << fmt(config.trap->charge) << "\n";
        os << "trap.m0 = " << fmt(config.trap->mass) << "\n";
        os << "trap.c = " << fmt(config.trap->light_speed) << "\n";
        os << "trap.V0 = " << fmt(config.trap->potential) << "\n";
        os << "trap.d = " << fmt(config.trap->trap_size) << "\n";
        os << "trap.B = " << fmt(config.trap->field) << "\n";
    }
    os << "frequencies.omega_z = " << fmt(config.frequencies.omega_z) << "\n";
    os << "frequencies.omega_c = " << fmt(config.frequencies.omega_c) << "\n";
    os << "frequencies.omega_m = " << fmt(config.frequencies.omega_m) << "\n";
    os << "drive.alpha = " << format_complex(config.drive.alpha) << "\n";
    os << "drive.epsilon = " << format_complex(config.drive.epsilon) << "\n";
    os << "drive.chi = " << fmt(config.drive.chi) << "\n";
    os << "drive.k = " << fmt(config.drive.wavenumber) << "\n";
    os << "drive.phi = " << fmt(config.drive.standing_phase) << "\n";
    os << "drive.Omega = " << fmt(config.drive.drive_frequency) << "\n";
    os << "drive.kappa_sq = " << fmt(config.drive.kappa_sq) << "\n";
    os << "drive.varphi = " << fmt(config.drive.varphi) << "\n";
    os << "drive.Delta = " << fmt(config.detuning) << "\n";
    os << "dissipation.gamma_c = " << fmt(config.dissipation.gamma_c) << "\n";
    os << "dissipation.Gamma = " << fmt(config.dissipation.Gamma) << "\n";
    os << "dissipation.N_th = " << fmt(config.dissipation.N_th) << "\n";
    if (config.dissipation.temperature)
        os << "dissipation.T = " << fmt(*config.dissipation.temperature) << "\n";
    os << "dissipation.f = " << fmt(config.dissipation.axial_drive) << "\n";
    os << "dissipation.d44_scale = " << fmt(config.dissipation.d44_scale) << "\n";
    os << "numerics.grid_points = " << config.numerics.grid_points << "\n";
    os << "numerics.extent = " << fmt(config.numerics.extent) << "\n";
    os << "numerics.fock_max = " << config.numerics.fock_max << "\n";
    os << "numerics.abs_tol = " << fmt(config.numerics.abs_tol) << "\n";
    os << "numerics.rel_tol = " << fmt(config.numerics.rel_tol) << "\n";
    os << "numerics.max_subdiv = " << config.numerics.max_subdiv << "\n";
    os << "numerics.half_width = " << fmt(config.numerics.half_width) << "\n";
    os << "numerics.spectrum_points = " << config.numerics.spectrum_points << "\n";
    os << "numerics.prominence = " << fmt(config.numerics.peak_prominence) << "\n";
    return os.str();
}

}  // namespace geonium
