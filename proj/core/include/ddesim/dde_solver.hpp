#pragma once

#include <span>
#include <vector>

#include "ddesim/delay_model.hpp"
#include "ddesim/polyexact.hpp"

namespace ddesim {

struct SolverConfig {
    double step = 1e-3;
    /// Times the mesh must hit exactly (discontinuity breakpoints); cells are
    /// shortened to land on them. Must lie inside [t0, t_end].
    std::vector<double> mandatory_points;
};

/// Dense-output numerical solution. Stores grid values and right-hand-side
/// values; evaluation between grid points is cubic Hermite interpolation,
/// which preserves the fourth-order accuracy of the integrator. Times at or
/// before t0 evaluate the history.
class Trajectory {
public:
    Trajectory(std::vector<double> grid, std::vector<double> values, std::vector<double> derivs,
               HistorySpec hist);

    double eval(double t) const;
    std::vector<double> eval_on(std::span<const double> ts) const;

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& derivs() const noexcept { return derivs_; }
    double t0() const noexcept { return grid_.front(); }
    double t_end() const noexcept { return grid_.back(); }
    const HistorySpec& history() const noexcept { return hist_; }

private:
    std::vector<double> grid_;
    std::vector<double> values_;
    std::vector<double> derivs_;
    HistorySpec hist_;
};

/// Classical fixed-step RK4. Lagged stage states come from the history (at or
/// before t0) or from the dense output over completed cells; zero-delay atoms
/// contribute an instantaneous linear term evaluated at the stage state.
/// Every positive delay must be at least 4*step so stages never reference the
/// cell being integrated (PositiveDelayTooSmall otherwise; reduce the step).
Trajectory solve_numeric(const WeightedDelays& prob, const HistorySpec& hist, double t_end,
                         const SolverConfig& cfg);

}  // namespace ddesim
