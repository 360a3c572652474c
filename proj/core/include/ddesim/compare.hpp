#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ddesim/distributed.hpp"
#include "ddesim/ensemble.hpp"

namespace ddesim {

/// Grid-sampled comparison of the averaged-solutions object (vR) against the
/// averaged-operator solution (vD).
struct ComparisonReport {
    std::vector<double> grid;
    std::vector<double> vR;
    std::vector<double> vD;
    double sup_diff = 0.0;
    double l2_diff = 0.0;  // trapezoid norm of vR - vD over the grid
    /// First grid time with |vR - vD| > tol; empty when never exceeded.
    std::optional<double> first_divergence;
    double tol = 0.0;
    /// 2 * smallest delay for discrete laws (annotation only).
    std::optional<double> agreement_window_end;
};

ComparisonReport compare(const MixtureResult& vR, const DistributedSolution& vD,
                         std::span<const double> grid, double tol,
                         std::optional<double> agreement_window_end = {});

inline constexpr double kAgreementTol = 1e-10;

struct AgreementResult {
    bool pass = false;
    double margin = 0.0;           // kAgreementTol minus the worst in-window diff
    double window_end = 0.0;       // absolute time t0 + 2*min_delay
    double max_window_diff = 0.0;
};

/// Checks that vR and vD coincide (within kAgreementTol) on
/// [t0, t0 + 2*min_delay]. Established for constant histories only; refuses
/// anything else.
AgreementResult agreement_check(const DiscreteLaw& law, const HistorySpec& hist,
                                const ComparisonReport& report);

}  // namespace ddesim
