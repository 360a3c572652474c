#include "ddesim/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "ddesim/errors.hpp"

namespace ddesim {

namespace {

void check_grid(std::span<const double> grid, double t0, double t_end) {
    if (grid.empty()) throw ValidationError("EmptyGrid", "evaluation grid is empty");
    for (double t : grid)
        if (t < t0 - kTimeMergeTol || t > t_end + kTimeMergeTol)
            throw ValidationError("GridOutOfRange", "grid point outside [t0, t_end]");
}

std::vector<double> merged_mandatory(const SolverConfig& cfg, double delay, double t0,
                                     double t_end) {
    auto pts = breakpoints(std::span<const double>{&delay, 1}, t0, t_end);
    pts.insert(pts.end(), cfg.mandatory_points.begin(), cfg.mandatory_points.end());
    return pts;
}

Trajectory solve_single(double alpha, double delay, const HistorySpec& hist, double t_end,
                        const SolverConfig& cfg) {
    WeightedDelays prob(alpha, {{delay, 1.0}});
    SolverConfig local = cfg;
    local.mandatory_points = merged_mandatory(cfg, delay, hist.t0, t_end);
    return solve_numeric(prob, hist, t_end, local);
}

}  // namespace

EnsembleResult run_ensemble(double alpha, const DelaySpec& spec, const HistorySpec& hist,
                            double t_end, std::uint64_t samples, std::uint64_t seed,
                            const SolverConfig& cfg, std::span<const double> grid,
                            const EnsembleOptions& options) {
    validate(spec);
    validate(hist);
    if (samples == 0) throw ValidationError("NoSamples", "need at least one sample");
    check_grid(grid, hist.t0, t_end);

    const auto* discrete = std::get_if<DiscreteLaw>(&spec);

    EnsembleResult result;
    result.grid.assign(grid.begin(), grid.end());
    result.mean.assign(grid.size(), 0.0);
    result.variance.assign(grid.size(), 0.0);
    result.samples = samples;
    result.seed = seed;
    if (discrete) result.atom_counts.assign(discrete->atoms.size(), 0);

    std::vector<double> m2(grid.size(), 0.0);
    // Repeated delays (discrete laws especially) reuse the same solve.
    std::unordered_map<std::uint64_t, std::vector<double>> cache;

    for (std::uint64_t i = 1; i <= samples; ++i) {
        RngStream stream = sample_stream(seed, i);
        double delay;
        if (discrete) {
            const std::size_t idx = sample_atom_index(*discrete, stream);
            ++result.atom_counts[idx];
            delay = discrete->atoms[idx].delay;
        } else {
            delay = sample_delay(spec, stream);
        }

        const std::uint64_t key = std::bit_cast<std::uint64_t>(delay);
        auto it = cache.find(key);
        if (it == cache.end() || options.keep_trajectories) {
            try {
                Trajectory traj = solve_single(alpha, delay, hist, t_end, cfg);
                if (it == cache.end())
                    it = cache.emplace(key, traj.eval_on(grid)).first;
                if (options.keep_trajectories) result.trajectories.push_back(std::move(traj));
            } catch (const SolverError& err) {
                throw SolverError(err.code(),
                                  "sample " + std::to_string(i) + " (delay " +
                                      std::to_string(delay) + "): " + err.what());
            }
        }

        const auto& values = it->second;
        const double inv_n = 1.0 / static_cast<double>(i);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double delta = values[k] - result.mean[k];
            result.mean[k] += delta * inv_n;
            m2[k] += delta * (values[k] - result.mean[k]);
        }
    }

    if (samples > 1) {
        const double inv = 1.0 / static_cast<double>(samples - 1);
        for (std::size_t k = 0; k < grid.size(); ++k)
            result.variance[k] = std::max(0.0, m2[k] * inv);
    }
    return result;
}

MixtureResult::MixtureResult(PiecewisePoly exact, std::vector<double> weights)
    : rep_(std::move(exact)), weights_(std::move(weights)) {}

MixtureResult::MixtureResult(QuadratureMix parts, std::vector<double> weights)
    : rep_(std::move(parts)), weights_(std::move(weights)) {
    if (std::get<QuadratureMix>(rep_).parts.size() != weights_.size())
        throw ValidationError("MixArity", "need one weight per trajectory");
}

double MixtureResult::eval(double t) const {
    if (const auto* pp = std::get_if<PiecewisePoly>(&rep_)) return pp->eval(t);
    const auto& qm = std::get<QuadratureMix>(rep_);
    double acc = 0.0;
    for (std::size_t k = 0; k < qm.parts.size(); ++k) acc += weights_[k] * qm.parts[k].eval(t);
    return acc;
}

std::vector<double> MixtureResult::eval_on(std::span<const double> ts) const {
    std::vector<double> out(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) out[k] = eval(ts[k]);
    return out;
}

MixtureResult exact_mixture(double alpha, const DiscreteLaw& law, const HistorySpec& hist,
                            double t_end, const ExactOptions& options) {
    validate(law);
    std::vector<PiecewisePoly> parts;
    std::vector<double> weights;
    parts.reserve(law.atoms.size());
    for (const auto& atom : law.atoms) {
        parts.push_back(solve_exact(WeightedDelays(alpha, {{atom.delay, 1.0}}), hist, t_end,
                                    options));
        weights.push_back(atom.prob);
    }
    PiecewisePoly mixed = mix(parts, weights);
    return MixtureResult(std::move(mixed), std::move(weights));
}

MixtureResult numeric_mixture(double alpha, const DiscreteLaw& law, const HistorySpec& hist,
                              double t_end, const SolverConfig& cfg) {
    validate(law);
    QuadratureMix qm;
    std::vector<double> weights;
    for (const auto& atom : law.atoms) {
        WeightedDelays prob(alpha, {{atom.delay, 1.0}});
        SolverConfig local = cfg;
        local.mandatory_points = merged_mandatory(cfg, atom.delay, hist.t0, t_end);
        qm.parts.push_back(solve_numeric(prob, hist, t_end, local));
        qm.nodes.push_back(atom.delay);
        weights.push_back(atom.prob);
    }
    return MixtureResult(std::move(qm), std::move(weights));
}

MixtureResult quadrature_mixture(double alpha, const ContinuousLaw& law, const HistorySpec& hist,
                                 double t_end, int n_nodes, const SolverConfig& cfg) {
    const auto atoms = discretize(DelaySpec{law}, n_nodes);
    QuadratureMix qm;
    std::vector<double> weights;
    for (const auto& atom : atoms) {
        WeightedDelays prob(alpha, {{atom.delay, 1.0}});
        SolverConfig local = cfg;
        local.mandatory_points = merged_mandatory(cfg, atom.delay, hist.t0, t_end);
        qm.parts.push_back(solve_numeric(prob, hist, t_end, local));
        qm.nodes.push_back(atom.delay);
        weights.push_back(atom.weight);
    }
    return MixtureResult(std::move(qm), std::move(weights));
}

SllnTable slln_diagnostics(double alpha, const DelaySpec& spec, const HistorySpec& hist,
                           double t_end, std::span<const std::uint64_t> sample_counts,
                           int batches, std::uint64_t seed, const SolverConfig& cfg,
                           std::span<const double> grid, int reference_nodes) {
    validate(spec);
    if (sample_counts.empty()) throw ValidationError("EmptyGrid", "no sample counts given");
    if (batches < 1) throw ValidationError("NoSamples", "need at least one batch");

    std::vector<double> reference;
    if (const auto* d = std::get_if<DiscreteLaw>(&spec)) {
        reference = exact_mixture(alpha, *d, hist, t_end).eval_on(grid);
    } else {
        reference = quadrature_mixture(alpha, std::get<ContinuousLaw>(spec), hist, t_end,
                                       reference_nodes, cfg)
                        .eval_on(grid);
    }

    SllnTable table;
    table.seed = seed;
    for (std::uint64_t m : sample_counts) {
        double err_sum = 0.0;
        for (int b = 0; b < batches; ++b) {
            const std::uint64_t batch_seed =
                mix_seed(mix_seed(seed, m), static_cast<std::uint64_t>(b));
            const auto res = run_ensemble(alpha, spec, hist, t_end, m, batch_seed, cfg, grid);
            double sup = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k)
                sup = std::max(sup, std::abs(res.mean[k] - reference[k]));
            err_sum += sup;
        }
        table.rows.push_back({m, err_sum / batches});
    }

    // Least-squares slope of log(error) vs log(M).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(table.rows.size());
    for (const auto& row : table.rows) {
        const double x = std::log(static_cast<double>(row.samples));
        const double y = std::log(std::max(row.mean_sup_error, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    table.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    return table;
}

}  // namespace ddesim
