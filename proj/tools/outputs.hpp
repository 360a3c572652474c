#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddesim/compare.hpp"
#include "run_config.hpp"

namespace ddesim::cli {

/// 17 significant digits, '.' decimal point, round-trip exact.
std::string format_g17(double v);

/// Plain CSV, one column per entry of columns; all columns share size.
void write_csv(const std::string& path, std::span<const std::string> header,
               std::span<const std::vector<double>> columns);

void write_text(const std::string& path, const std::string& text);

nlohmann::json report_to_json(const ComparisonReport& report,
                              const std::optional<QuadratureProvenance>& provenance,
                              const RunConfig& cfg);

}  // namespace ddesim::cli
