#include "geonium/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace geonium::io {

std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing file '" + path + "'");
}

void write_wigner_csv(const std::string& path, const WignerGrid& grid) {
    std::ostringstream os;
    os << "q,p,w\n";
    const auto& g = grid.grid;
    for (std::size_t i = 0; i < g.q_axis.size(); ++i)
        for (std::size_t j = 0; j < g.p_axis.size(); ++j)
            os << format_value(g.q_axis[i]) << ',' << format_value(g.p_axis[j]) << ','
               << format_value(g.at(i, j)) << '\n';
    write_text(path, os.str());
}

void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& x,
                     const std::vector<double>& y) {
    if (x.size() != y.size()) throw NumericError("write_curve_csv: column size mismatch");
    std::ostringstream os;
    os << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < x.size(); ++i)
        os << format_value(x[i]) << ',' << format_value(y[i]) << '\n';
    write_text(path, os.str());
}

void write_table_csv(const std::string& path, const std::vector<std::string>& names,
                     const std::vector<const std::vector<double>*>& columns) {
    if (names.size() != columns.size() || columns.empty())
        throw NumericError("write_table_csv: malformed columns");
    std::ostringstream os;
    for (std::size_t c = 0; c < names.size(); ++c)
        os << names[c] << (c + 1 == names.size() ? '\n' : ',');
    const std::size_t rows = columns.front()->size();
    for (const auto* col : columns)
        if (col->size() != rows) throw NumericError("write_table_csv: column size mismatch");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << format_value((*columns[c])[r]) << (c + 1 == columns.size() ? '\n' : ',');
    write_text(path, os.str());
}

nlohmann::json config_to_json(const ModelConfig& config) {
    nlohmann::json j;
    if (config.trap) {
        j["trap"] = {{"e", config.trap->charge},      {"m0", config.trap->mass},
                     {"c", config.trap->light_speed}, {"V0", config.trap->potential},
                     {"d", config.trap->trap_size},   {"B", config.trap->field}};
    }
    j["frequencies"] = {{"omega_z", config.frequencies.omega_z},
                        {"omega_c", config.frequencies.omega_c},
                        {"omega_m", config.frequencies.omega_m}};
    j["drive"] = {{"alpha", format_complex(config.drive.alpha)},
                  {"epsilon", format_complex(config.drive.epsilon)},
                  {"chi", config.drive.chi},
                  {"k", config.drive.wavenumber},
                  {"phi", config.drive.standing_phase},
                  {"Omega", config.drive.drive_frequency},
                  {"kappa_sq", config.drive.kappa_sq},
                  {"varphi", config.drive.varphi},
                  {"Delta", config.detuning}};
    j["dissipation"] = {{"gamma_c", config.dissipation.gamma_c},
                        {"Gamma", config.dissipation.Gamma},
                        {"N_th", config.dissipation.N_th},
                        {"f", config.dissipation.axial_drive},
                        {"d44_scale", config.dissipation.d44_scale}};
    if (config.dissipation.temperature)
        j["dissipation"]["T"] = *config.dissipation.temperature;
    j["numerics"] = {{"grid_points", config.numerics.grid_points},
                     {"extent", config.numerics.extent},
                     {"fock_max", config.numerics.fock_max},
                     {"abs_tol", config.numerics.abs_tol},
                     {"rel_tol", config.numerics.rel_tol},
                     {"max_subdiv", config.numerics.max_subdiv},
                     {"half_width", config.numerics.half_width},
                     {"spectrum_points", config.numerics.spectrum_points},
                     {"prominence", config.numerics.peak_prominence}};
    return j;
}

RunManifest::RunManifest(std::string command) {
    j_["command"] = std::move(command);
    j_["outputs"] = nlohmann::json::array();
    j_["assumed"] = nlohmann::json::object();
    j_["diagnostics"] = nlohmann::json::object();
}

void RunManifest::set_config(const ModelConfig& config) { j_["config"] = config_to_json(config); }

void RunManifest::add_output(const std::string& path) { j_["outputs"].push_back(path); }

void RunManifest::assumed(const std::string& key, const nlohmann::json& value) {
    j_["assumed"][key] = value;
}

void RunManifest::diagnostic(const std::string& key, const nlohmann::json& value) {
    j_["diagnostics"][key] = value;
}

void RunManifest::set_duration_ms(double ms) { j_["duration_ms"] = ms; }

void RunManifest::write(const std::string& path) const {
    write_text(path, j_.dump(2) + "\n");
}

}  // namespace geonium::io
