#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ddesim/dde_solver.hpp"
#include "ddesim/delay_model.hpp"
#include "ddesim/ensemble.hpp"
#include "ddesim/polyexact.hpp"

namespace ddesim {

struct QuadratureProvenance {
    int n_nodes = 0;
    double truncation_eps = 0.0;
};

/// The operator-averaged equation u'(t) = alpha * E[u(t - Delta)] reduced to
/// a weighted multi-delay problem: atom probabilities verbatim for discrete
/// laws, quadrature nodes/weights for continuous ones.
struct DistributedProblem {
    double alpha = 0.0;
    std::vector<WeightedAtom> effective_atoms;
    std::optional<QuadratureProvenance> quadrature;  // engaged for continuous laws
};

/// n_nodes is required for continuous laws and ignored for discrete ones.
DistributedProblem build_distributed(double alpha, const DelaySpec& spec,
                                     std::optional<int> n_nodes = {});

enum class SolveMode { exact, numeric };

using DistributedSolution = std::variant<PiecewisePoly, Trajectory>;

/// Solves the averaged equation itself (one solve on all effective atoms).
/// Exact mode requires every delay positive.
DistributedSolution solve_distributed(const DistributedProblem& prob, const HistorySpec& hist,
                                      double t_end, SolveMode mode, const SolverConfig& cfg = {},
                                      const ExactOptions& exact_options = {});

double eval_solution(const DistributedSolution& solution, double t);
std::vector<double> eval_solution_on(const DistributedSolution& solution,
                                     std::span<const double> ts);

}  // namespace ddesim
