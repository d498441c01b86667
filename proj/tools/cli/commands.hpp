#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spec_input.hpp"
#include "util.hpp"

namespace pkcli {

struct RunConfig {
    std::size_t grid_n = 512;
    std::size_t quad_n = 8192;
    double tail_tol = 1e-10;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    OutFormat format = OutFormat::csv;
    std::string out;  // empty: stdout
    bool oracle = false;
};

// Each command returns the process exit code (0 ok, 1 verification failure).
int cmd_state(const StateSpec& spec, const RunConfig& cfg);
int cmd_uncertainty(const StateSpec& spec, const RunConfig& cfg);
int cmd_verify(const std::string& suite, const RunConfig& cfg);
int cmd_repro(const RunConfig& cfg);
int cmd_sweep(const StateSpec& templ, const std::string& param,
              const std::vector<double>& values, const std::string& plot_path,
              const RunConfig& cfg);

} // namespace pkcli
