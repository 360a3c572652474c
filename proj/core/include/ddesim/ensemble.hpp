#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ddesim/dde_solver.hpp"
#include "ddesim/delay_model.hpp"
#include "ddesim/polyexact.hpp"

namespace ddesim {

struct EnsembleOptions {
    /// Keep every sample trajectory (memory grows with the sample count).
    bool keep_trajectories = false;
};

struct EnsembleResult {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> variance;  // unbiased pointwise sample variance
    std::uint64_t samples = 0;
    /// Per-atom draw tallies; filled for discrete specs only.
    std::vector<std::uint64_t> atom_counts;
    std::uint64_t seed = 0;
    std::vector<Trajectory> trajectories;  // only on request
};

/// Monte Carlo mean of sampled single-delay solutions: sample i draws its
/// delay from the stream derived from (seed, i), solves numerically, and the
/// mean/variance accumulate in sample-index order (Welford), so the result is
/// bit-reproducible for a given seed. Solver errors are rethrown with the
/// offending sample index in the message.
EnsembleResult run_ensemble(double alpha, const DelaySpec& spec, const HistorySpec& hist,
                            double t_end, std::uint64_t samples, std::uint64_t seed,
                            const SolverConfig& cfg, std::span<const double> grid,
                            const EnsembleOptions& options = {});

struct QuadratureMix {
    std::vector<Trajectory> parts;
    std::vector<double> nodes;
};

/// The large-sample limit of the ensemble mean: an exact weighted mixture of
/// per-atom solutions (discrete laws) or a quadrature-weighted sum of
/// per-node trajectories (continuous laws).
class MixtureResult {
public:
    MixtureResult(PiecewisePoly exact, std::vector<double> weights);
    MixtureResult(QuadratureMix parts, std::vector<double> weights);

    double eval(double t) const;
    std::vector<double> eval_on(std::span<const double> ts) const;

    bool is_exact() const noexcept { return std::holds_alternative<PiecewisePoly>(rep_); }
    const PiecewisePoly& exact() const { return std::get<PiecewisePoly>(rep_); }
    const QuadratureMix& quadrature() const { return std::get<QuadratureMix>(rep_); }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    std::variant<PiecewisePoly, QuadratureMix> rep_;
    std::vector<double> weights_;
};

/// One exact solve per atom, mixed with the atom probabilities. Requires all
/// delays positive; zero-delay atoms go through numeric_mixture.
MixtureResult exact_mixture(double alpha, const DiscreteLaw& law, const HistorySpec& hist,
                            double t_end, const ExactOptions& options = {});

/// Numerical fallback for discrete laws with a zero-delay atom.
MixtureResult numeric_mixture(double alpha, const DiscreteLaw& law, const HistorySpec& hist,
                              double t_end, const SolverConfig& cfg);

/// Discretize the continuous law, solve one single-delay problem per node,
/// and weight-sum the trajectories.
MixtureResult quadrature_mixture(double alpha, const ContinuousLaw& law, const HistorySpec& hist,
                                 double t_end, int n_nodes, const SolverConfig& cfg);

struct SllnRow {
    std::uint64_t samples;
    double mean_sup_error;  // batch mean of sup-grid |ensemble mean - mixture|
};

struct SllnTable {
    std::vector<SllnRow> rows;
    double slope = 0.0;  // least-squares slope of log(error) vs log(M)
    std::uint64_t seed = 0;
};

/// Convergence diagnostics for the ensemble mean: for each sample count, runs
/// independent batches (seeds derived from (seed, M, batch)) and reports the
/// batch-mean sup-grid distance to the mixture limit. Continuous laws use a
/// quadrature mixture with reference_nodes nodes as the limit.
SllnTable slln_diagnostics(double alpha, const DelaySpec& spec, const HistorySpec& hist,
                           double t_end, std::span<const std::uint64_t> sample_counts,
                           int batches, std::uint64_t seed, const SolverConfig& cfg,
                           std::span<const double> grid, int reference_nodes = 256);

}  // namespace ddesim
