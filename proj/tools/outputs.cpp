#include "outputs.hpp"

#include <cstdio>
#include <fstream>

#include "ddesim/errors.hpp"
#include "ddesim/version.hpp"

namespace ddesim::cli {

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, std::span<const std::string> header,
               std::span<const std::vector<double>> columns) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SolverError("OutputError", "cannot write " + path);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ',';
            out << format_g17(columns[c][r]);
        }
        out << '\n';
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SolverError("OutputError", "cannot write " + path);
    out << text;
}

nlohmann::json report_to_json(const ComparisonReport& report,
                              const std::optional<QuadratureProvenance>& provenance,
                              const RunConfig& cfg) {
    nlohmann::json j;
    j["grid"] = report.grid;
    j["vR"] = report.vR;
    j["vD"] = report.vD;
    j["sup_diff"] = report.sup_diff;
    j["l2_diff"] = report.l2_diff;
    j["first_divergence"] =
        report.first_divergence ? nlohmann::json(*report.first_divergence) : nlohmann::json();
    j["tol"] = report.tol;
    j["agreement_window_end"] = report.agreement_window_end
                                    ? nlohmann::json(*report.agreement_window_end)
                                    : nlohmann::json();
    if (provenance) {
        j["provenance"] = {{"type", "quadrature"},
                           {"n_nodes", provenance->n_nodes},
                           {"truncation_eps", provenance->truncation_eps}};
    } else {
        j["provenance"] = {{"type", "discrete"}};
    }
    j["config"] = to_json(cfg);
    j["version"] = kVersion;
    return j;
}

}  // namespace ddesim::cli
