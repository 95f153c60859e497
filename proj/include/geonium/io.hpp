#ifndef GEONIUM_IO_HPP
#define GEONIUM_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "geonium/cat_states.hpp"
#include "geonium/steady_state.hpp"

namespace geonium::io {

// Fixed %.17g formatting everywhere so identical runs emit identical bytes.
std::string format_value(double x);

void write_text(const std::string& path, const std::string& content);

// Long-format grid: header "q,p,w", row per (q, p) pair, q outer.
void write_wigner_csv(const std::string& path, const WignerGrid& grid);

// Two-column curve "omega,value".
void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& x,
                     const std::vector<double>& y);

// Multi-column table with one x column and several y columns.
void write_table_csv(const std::string& path, const std::vector<std::string>& names,
                     const std::vector<const std::vector<double>*>& columns);

// Run manifest: command, resolved configuration, assumed fill-ins,
// diagnostics, and the list of files it describes.
class RunManifest {
public:
    explicit RunManifest(std::string command);

    void set_config(const ModelConfig& config);
    void add_output(const std::string& path);
    void assumed(const std::string& key, const nlohmann::json& value);
    void diagnostic(const std::string& key, const nlohmann::json& value);
    void set_duration_ms(double ms);

    void write(const std::string& path) const;
    const nlohmann::json& json() const { return j_; }

private:
    nlohmann::json j_;
};

nlohmann::json config_to_json(const ModelConfig& config);

}  // namespace geonium::io

#endif
