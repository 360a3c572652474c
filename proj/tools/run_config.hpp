#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddesim/delay_model.hpp"

namespace ddesim::cli {

struct OutputPaths {
    std::string csv = "out.csv";
    std::string json = "out.json";
};

/// One problem description shared by every subcommand. Loaded from a JSON
/// config file; see docs/config.md for the schema.
struct RunConfig {
    double alpha = 1.0;
    DelaySpec delay = DiscreteLaw{{{1.0, 1.0}}};
    HistorySpec history{ConstantHistory{1.0}, 0.0};
    double t_end = 3.0;
    double step = 1e-3;       // solver step h
    double grid_step = 0.01;  // output grid spacing
    std::uint64_t seed = 1;
    std::uint64_t samples = 10000;
    int quadrature_nodes = 32;
    double compare_tol = 1e-9;
    OutputPaths output;

    double t0() const noexcept { return history.t0; }
    std::vector<double> grid() const;
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::string& path);

/// Revalidates every referenced module invariant.
void validate_config(const RunConfig& cfg);

}  // namespace ddesim::cli
