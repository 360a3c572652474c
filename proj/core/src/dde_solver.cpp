#include "ddesim/dde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddesim/errors.hpp"

namespace ddesim {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Hermite basis in the factored forms that are exact at s = 0 and s = 1.
double hermite(const std::vector<double>& grid, const std::vector<double>& values,
               const std::vector<double>& derivs, std::size_t cell, double t) {
    const double h = grid[cell + 1] - grid[cell];
    const double s = (t - grid[cell]) / h;
    const double oms = 1.0 - s;
    const double h00 = (1.0 + 2.0 * s) * oms * oms;
    const double h10 = s * oms * oms;
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * values[cell] + h10 * h * derivs[cell] + h01 * values[cell + 1] +
           h11 * h * derivs[cell + 1];
}

// Cell of t among grid[0..hi]; t must satisfy grid[0] <= t <= grid[hi].
std::size_t locate_cell(const std::vector<double>& grid, std::size_t hi, double t) {
    auto it = std::upper_bound(grid.begin(), grid.begin() + hi + 1, t);
    if (it == grid.begin()) return 0;
    const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    return std::min(i, hi - 1);
}

}  // namespace

Trajectory::Trajectory(std::vector<double> grid, std::vector<double> values,
                       std::vector<double> derivs, HistorySpec hist)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      derivs_(std::move(derivs)),
      hist_(std::move(hist)) {}

double Trajectory::eval(double t) const {
    if (t <= hist_.t0) return hist_.eval(t);
    if (t > grid_.back() + 1e-9)
        throw SolverError("DomainError",
                          "t = " + num(t) + " beyond computed range " + num(grid_.back()));
    const std::size_t cell = locate_cell(grid_, grid_.size() - 1, std::min(t, grid_.back()));
    return hermite(grid_, values_, derivs_, cell, t);
}

std::vector<double> Trajectory::eval_on(std::span<const double> ts) const {
    std::vector<double> out(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) out[k] = eval(ts[k]);
    return out;
}

Trajectory solve_numeric(const WeightedDelays& prob, const HistorySpec& hist, double t_end,
                         const SolverConfig& cfg) {
    validate(hist);
    const double t0 = hist.t0;
    if (!(t_end > t0)) throw ValidationError("BadTimeRange", "t_end must exceed t0");
    if (!(cfg.step > 0.0)) throw ValidationError("NonPositiveStep", "step " + num(cfg.step));
    for (const auto& atom : prob.atoms())
        if (atom.delay > 0.0 && atom.delay < 4.0 * cfg.step)
            throw SolverError("PositiveDelayTooSmall",
                              "delay " + num(atom.delay) + " < 4*step = " + num(4.0 * cfg.step) +
                                  "; reduce the step");
    if (hist.lower_bound() > t0 - prob.max_delay() + kTimeMergeTol)
        throw SolverError("HistoryGap", "history must cover [" + num(t0 - prob.max_delay()) +
                                            ", " + num(t0) + "]");
    for (double m : cfg.mandatory_points)
        if (m < t0 - kTimeMergeTol || m > t_end + kTimeMergeTol)
            throw ValidationError("MandatoryPointOutOfRange",
                                  "mandatory point " + num(m) + " outside [" + num(t0) + ", " +
                                      num(t_end) + "]");

    // Uniform grid anchored at t0, then mandatory points spliced in exactly.
    std::vector<double> grid{t0};
    for (std::size_t k = 1;; ++k) {
        const double t = t0 + static_cast<double>(k) * cfg.step;
        if (t >= t_end - kTimeMergeTol) break;
        grid.push_back(t);
    }
    grid.push_back(t_end);
    std::vector<double> mandatory(cfg.mandatory_points.begin(), cfg.mandatory_points.end());
    std::sort(mandatory.begin(), mandatory.end());
    for (double m : mandatory) {
        auto it = std::lower_bound(grid.begin(), grid.end(), m);
        if (it != grid.end() && *it - m <= kTimeMergeTol) {
            if (it != grid.begin() && it + 1 != grid.end()) *it = m;  // keep endpoints exact
            continue;
        }
        if (it != grid.begin() && m - *(it - 1) <= kTimeMergeTol) {
            if (it - 1 != grid.begin() && it != grid.end()) *(it - 1) = m;
            continue;
        }
        grid.insert(it, m);
    }

    const std::size_t n = grid.size();
    std::vector<double> values(n), derivs(n);
    values[0] = hist.eval(t0);

    const double inst = prob.alpha() * prob.instantaneous_weight();
    std::size_t completed = 0;  // grid points 0..completed hold final values

    auto lagged = [&](double tau) -> double {
        if (tau <= t0) return hist.eval(tau);
        const std::size_t cell = locate_cell(grid, completed, std::min(tau, grid[completed]));
        return hermite(grid, values, derivs, cell, tau);
    };
    auto rhs = [&](double t, double y) -> double {
        double acc = 0.0;
        for (const auto& atom : prob.atoms()) {
            if (atom.delay == 0.0) continue;
            acc += atom.weight * lagged(t - atom.delay);
        }
        return prob.alpha() * acc + inst * y;
    };

    derivs[0] = rhs(t0, values[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = grid[i];
        const double h = grid[i + 1] - t;
        const double y = values[i];
        const double k1 = derivs[i];
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        values[i + 1] = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        completed = i + 1;
        derivs[i + 1] = rhs(grid[i + 1], values[i + 1]);
    }
    return Trajectory(std::move(grid), std::move(values), std::move(derivs), hist);
}

}  // namespace ddesim
