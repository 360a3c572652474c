#pragma once

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "ddesim/rng.hpp"

namespace ddesim {

// ---------------------------------------------------------------------------
// Delay laws
// ---------------------------------------------------------------------------

/// One atom of a discrete delay law.
struct DiscreteAtom {
    double delay = 0.0;
    double prob = 0.0;
};

/// Finitely supported delay law. Atoms sorted by strictly increasing delay,
/// delays nonnegative, probabilities in (0, 1] summing to 1 within 1e-12.
struct DiscreteLaw {
    std::vector<DiscreteAtom> atoms;
};

struct UniformLaw {
    double a = 0.0;
    double b = 1.0;
};

struct ExponentialLaw {
    double rate = 1.0;
};

/// User-supplied quantile table: q(p[k]) = q[k], p strictly increasing and
/// covering [0, 1], q nondecreasing with q[0] >= 0. Quantiles in between are
/// linearly interpolated.
struct TabulatedQuantileLaw {
    std::vector<double> p;
    std::vector<double> q;
};

using ContinuousFamily = std::variant<UniformLaw, ExponentialLaw, TabulatedQuantileLaw>;

/// Continuous delay law plus the quantile truncation used when an unbounded
/// support has to be reduced to a compact quadrature interval.
struct ContinuousLaw {
    ContinuousFamily family;
    double truncation_eps = 1e-6;  // in (0, 1e-2]
};

using DelaySpec = std::variant<DiscreteLaw, ContinuousLaw>;

/// Node of a quadrature-discretized law, and the atom type consumed by the
/// solvers.
struct WeightedAtom {
    double delay = 0.0;
    double weight = 0.0;
};

// Throws ValidationError naming the first violated invariant.
void validate(const DiscreteLaw& law);
void validate(const ContinuousLaw& law);
void validate(const DelaySpec& spec);

/// One realization of the delay; consumes exactly one uniform variate.
/// Continuous laws draw via the inverse-CDF transform.
double sample_delay(const DelaySpec& spec, RngStream& stream);

/// Index of the atom a draw falls on (inverse CDF over cumulative
/// probabilities); consumes exactly one uniform variate.
std::size_t sample_atom_index(const DiscreteLaw& law, RngStream& stream);

/// Generalized inverse CDF. For discrete laws returns the smallest atom whose
/// cumulative probability reaches p. p outside [0, 1] is an error.
double quantile(const DelaySpec& spec, double p);

double cdf(const DelaySpec& spec, double x);

/// Density of a continuous law at x (piecewise slope for tabulated laws).
double density(const ContinuousLaw& law, double x);

/// Gauss-Legendre discretization of a continuous law into n weighted atoms.
/// Nodes are mapped affinely onto [q(eps), q(1-eps)] (the full [a, b] for
/// uniform laws), weights are the quadrature weights times the density at the
/// node, renormalized to sum to 1. Calling this on a discrete spec is an
/// error.
std::vector<WeightedAtom> discretize(const DelaySpec& spec, int n_nodes);

double min_delay(const DiscreteLaw& law);
double max_delay(const DiscreteLaw& law);

inline bool is_discrete(const DelaySpec& spec) {
    return std::holds_alternative<DiscreteLaw>(spec);
}

// ---------------------------------------------------------------------------
// History functions (solution values for t <= t0)
// ---------------------------------------------------------------------------

struct ConstantHistory {
    double value = 0.0;
};

/// Coefficients in powers of (t - t0), defined for all t <= t0.
struct PolynomialHistory {
    std::vector<double> coeffs;
};

/// Contiguous polynomial segments covering [breakpoints.front(), t0] with
/// breakpoints.back() == t0; segment k has coefficients in powers of
/// (t - breakpoints[k]). Evaluation below the covered interval is an error.
struct PiecewiseTableHistory {
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> coeffs;
};

struct HistorySpec {
    std::variant<ConstantHistory, PolynomialHistory, PiecewiseTableHistory> shape;
    double t0 = 0.0;

    double eval(double t) const;  // t <= t0 (tiny slack); throws HistoryGap below coverage
    double lower_bound() const;   // -inf unless piecewise
    bool is_constant() const noexcept;
};

void validate(const HistorySpec& hist);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ddesim
