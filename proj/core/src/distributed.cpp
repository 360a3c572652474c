#include "ddesim/distributed.hpp"

#include "ddesim/errors.hpp"

namespace ddesim {

DistributedProblem build_distributed(double alpha, const DelaySpec& spec,
                                     std::optional<int> n_nodes) {
    validate(spec);
    DistributedProblem prob;
    prob.alpha = alpha;
    if (const auto* d = std::get_if<DiscreteLaw>(&spec)) {
        for (const auto& atom : d->atoms) prob.effective_atoms.push_back({atom.delay, atom.prob});
        return prob;
    }
    if (!n_nodes)
        throw ValidationError("MissingNodes", "continuous laws need n_nodes to discretize");
    prob.effective_atoms = discretize(spec, *n_nodes);
    prob.quadrature = QuadratureProvenance{*n_nodes, std::get<ContinuousLaw>(spec).truncation_eps};
    return prob;
}

DistributedSolution solve_distributed(const DistributedProblem& prob, const HistorySpec& hist,
                                      double t_end, SolveMode mode, const SolverConfig& cfg,
                                      const ExactOptions& exact_options) {
    WeightedDelays delays(prob.alpha, prob.effective_atoms);
    if (mode == SolveMode::exact) return solve_exact(delays, hist, t_end, exact_options);
    SolverConfig local = cfg;
    auto pts = breakpoints(delays.delays(), hist.t0, t_end);
    local.mandatory_points.insert(local.mandatory_points.end(), pts.begin(), pts.end());
    return solve_numeric(delays, hist, t_end, local);
}

double eval_solution(const DistributedSolution& solution, double t) {
    return std::visit([t](const auto& s) { return s.eval(t); }, solution);
}

std::vector<double> eval_solution_on(const DistributedSolution& solution,
                                     std::span<const double> ts) {
    return std::visit([ts](const auto& s) { return s.eval_on(ts); }, solution);
}

}  // namespace ddesim
