#ifndef GEONIUM_CLI_HPP
#define GEONIUM_CLI_HPP

#include <string>
#include <vector>

namespace geonium::cli {

// Full command-line front end; returns the process exit code
// (0 ok, 2 invalid config, 3 numerical failure, 4 instability).
int run(const std::vector<std::string>& args);

// The scenario-preset parameter set used by fig1/fig2 and as the fallback
// for the generic commands.
struct Defaults;

}  // namespace geonium::cli

#endif
