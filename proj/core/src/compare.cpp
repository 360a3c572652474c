#include "ddesim/compare.hpp"

#include <algorithm>
#include <cmath>

#include "ddesim/errors.hpp"

namespace ddesim {

ComparisonReport compare(const MixtureResult& vR, const DistributedSolution& vD,
                         std::span<const double> grid, double tol,
                         std::optional<double> agreement_window_end) {
    if (grid.empty()) throw ValidationError("EmptyGrid", "comparison grid is empty");
    ComparisonReport report;
    report.grid.assign(grid.begin(), grid.end());
    report.vR = vR.eval_on(grid);
    report.vD = eval_solution_on(vD, grid);
    report.tol = tol;
    report.agreement_window_end = agreement_window_end;

    double l2 = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double diff = std::abs(report.vR[k] - report.vD[k]);
        report.sup_diff = std::max(report.sup_diff, diff);
        if (!report.first_divergence && diff > tol) report.first_divergence = grid[k];
        if (k + 1 < grid.size()) {
            const double next = std::abs(report.vR[k + 1] - report.vD[k + 1]);
            l2 += 0.5 * (diff * diff + next * next) * (grid[k + 1] - grid[k]);
        }
    }
    report.l2_diff = std::sqrt(l2);
    return report;
}

AgreementResult agreement_check(const DiscreteLaw& law, const HistorySpec& hist,
                                const ComparisonReport& report) {
    validate(law);
    if (!hist.is_constant())
        throw ValidationError("NonConstantHistory",
                              "agreement window is established for constant histories only");
    AgreementResult result;
    result.window_end = hist.t0 + 2.0 * min_delay(law);
    for (std::size_t k = 0; k < report.grid.size(); ++k) {
        if (report.grid[k] > result.window_end + 1e-12) break;
        result.max_window_diff =
            std::max(result.max_window_diff, std::abs(report.vR[k] - report.vD[k]));
    }
    result.margin = kAgreementTol - result.max_window_diff;
    result.pass = result.margin >= 0.0;
    return result;
}

}  // namespace ddesim
