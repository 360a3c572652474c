#pragma once

#include <span>
#include <vector>

#include "ddesim/delay_model.hpp"
#include "ddesim/piecewise_poly.hpp"

namespace ddesim {

/// Right-hand side u'(t) = alpha * sum_j w_j * u(t - delay_j). Atoms are
/// sorted by delay, duplicates (within 1e-9) merged by summing weights;
/// weights must be positive and sum to 1 within 1e-12.
class WeightedDelays {
public:
    WeightedDelays(double alpha, std::vector<WeightedAtom> atoms);

    double alpha() const noexcept { return alpha_; }
    const std::vector<WeightedAtom>& atoms() const noexcept { return atoms_; }
    std::vector<double> delays() const;

    double min_delay() const noexcept { return atoms_.front().delay; }
    double max_delay() const noexcept { return atoms_.back().delay; }
    bool has_zero_delay() const noexcept { return atoms_.front().delay == 0.0; }
    /// Combined weight of zero-delay atoms (instantaneous term).
    double instantaneous_weight() const noexcept;

private:
    double alpha_;
    std::vector<WeightedAtom> atoms_;
};

/// Times where solution smoothness can degrade: every t0 + sum_j k_j*delay_j
/// <= t_end over nonnegative integers k_j (positive delays only), plus t_end.
/// Values closer than 1e-9 are merged. With no positive delays the result is
/// {t0, t_end}.
std::vector<double> breakpoints(std::span<const double> delays, double t0, double t_end);

struct ExactOptions {
    /// Segment degree guard; degree grows by one per delay interval, so long
    /// horizons with small delays can exceed any useful precision.
    int max_degree = 200;
};

/// Method of steps with exact polynomial quadrature: between consecutive
/// breakpoints every lagged argument lands inside a single already-solved
/// segment (or history piece), so the right-hand side is one known polynomial
/// and the segment is its antiderivative, matched continuously. Requires all
/// delays positive (a zero delay makes the right-hand side depend on the
/// current unknown; use the numerical solver for that). Interior breakpoints
/// of piecewise histories are propagated through the delay lattice as well.
PiecewisePoly solve_exact(const WeightedDelays& prob, const HistorySpec& hist, double t_end,
                          const ExactOptions& options = {});

/// Breakpoint-union weighted sum of piecewise polynomials over a common
/// domain; weights must sum to 1 within 1e-12.
PiecewisePoly mix(std::span<const PiecewisePoly> parts, std::span<const double> weights);

inline constexpr double kTimeMergeTol = 1e-9;

}  // namespace ddesim
