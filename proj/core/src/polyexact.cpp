#include "ddesim/polyexact.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "ddesim/errors.hpp"
#include "ddesim/polynomial.hpp"

namespace ddesim {

namespace {

constexpr std::size_t kMaxBreakpoints = 200000;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Insert q into the sorted vector unless a point within kTimeMergeTol already
// exists; returns true when inserted.
bool insert_merged(std::vector<double>& pts, double q) {
    auto it = std::lower_bound(pts.begin(), pts.end(), q);
    if (it != pts.end() && *it - q <= kTimeMergeTol) return false;
    if (it != pts.begin() && q - *(it - 1) <= kTimeMergeTol) return false;
    pts.insert(it, q);
    return true;
}

// Breakpoint lattice grown from the given seed times. Only points in
// [t0, t_end] survive, but seeds below t0 (piecewise-history knots) are
// expanded too so their images past t0 are captured.
std::vector<double> lattice(std::span<const double> delays, double t0,
                            std::span<const double> extra_seeds, double t_end) {
    std::vector<double> positive;
    for (double d : delays)
        if (d > 0.0) positive.push_back(d);
    std::sort(positive.begin(), positive.end());

    std::vector<double> pts{t0};
    std::deque<double> queue{t0};
    for (double s : extra_seeds) {
        if (insert_merged(pts, s)) queue.push_back(s);
    }
    while (!queue.empty()) {
        const double p = queue.front();
        queue.pop_front();
        for (double d : positive) {
            const double q = p + d;
            if (q > t_end + kTimeMergeTol) break;
            if (insert_merged(pts, q)) queue.push_back(q);
        }
        if (pts.size() > kMaxBreakpoints)
            throw SolverError("BreakpointOverflow",
                              "more than " + std::to_string(kMaxBreakpoints) +
                                  " breakpoints; delays too small or nearly incommensurate");
    }

    std::vector<double> out;
    out.reserve(pts.size() + 1);
    for (double p : pts)
        if (p >= t0 && p < t_end - kTimeMergeTol) out.push_back(p);
    out.push_back(t_end);
    return out;
}

struct HistoryPiece {
    double lo;
    double hi;
    double center;  // coefficients are in powers of (t - center)
    const std::vector<double>* coeffs;
    std::vector<double> storage;  // used when the spec has no coefficient list
};

std::vector<HistoryPiece> history_pieces(const HistorySpec& hist) {
    std::vector<HistoryPiece> pieces;
    if (const auto* c = std::get_if<ConstantHistory>(&hist.shape)) {
        pieces.push_back({-kInf, hist.t0, hist.t0, nullptr, {c->value}});
        pieces.back().coeffs = &pieces.back().storage;
    } else if (const auto* p = std::get_if<PolynomialHistory>(&hist.shape)) {
        pieces.push_back({-kInf, hist.t0, hist.t0, &p->coeffs, {}});
    } else {
        const auto& t = std::get<PiecewiseTableHistory>(hist.shape);
        for (std::size_t k = 0; k + 1 < t.breakpoints.size(); ++k)
            pieces.push_back({t.breakpoints[k], t.breakpoints[k + 1], t.breakpoints[k],
                              &t.coeffs[k], {}});
    }
    return pieces;
}

const HistoryPiece& find_history_piece(const std::vector<HistoryPiece>& pieces, double t) {
    for (const auto& piece : pieces)
        if (t <= piece.hi || &piece == &pieces.back()) {
            if (t < piece.lo - kTimeMergeTol)
                throw SolverError("HistoryGap", "history undefined at t = " + num(t));
            return piece;
        }
    throw SolverError("HistoryGap", "history undefined at t = " + num(t));
}

}  // namespace

WeightedDelays::WeightedDelays(double alpha, std::vector<WeightedAtom> atoms) : alpha_(alpha) {
    if (atoms.empty()) throw ValidationError("EmptyAtoms", "need at least one delay atom");
    std::sort(atoms.begin(), atoms.end(),
              [](const WeightedAtom& x, const WeightedAtom& y) { return x.delay < y.delay; });
    double sum = 0.0;
    for (const auto& atom : atoms) {
        if (!(atom.delay >= 0.0))
            throw ValidationError("NegativeDelay", "delay " + num(atom.delay));
        if (!(atom.weight > 0.0))
            throw ValidationError("NonPositiveWeight", "weight " + num(atom.weight));
        sum += atom.weight;
        if (!atoms_.empty() && atom.delay - atoms_.back().delay <= kTimeMergeTol)
            atoms_.back().weight += atom.weight;
        else
            atoms_.push_back(atom);
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("WeightSumMismatch", "weights sum to " + num(sum));
}

std::vector<double> WeightedDelays::delays() const {
    std::vector<double> out(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) out[i] = atoms_[i].delay;
    return out;
}

double WeightedDelays::instantaneous_weight() const noexcept {
    double w = 0.0;
    for (const auto& atom : atoms_) {
        if (atom.delay > 0.0) break;
        w += atom.weight;
    }
    return w;
}

std::vector<double> breakpoints(std::span<const double> delays, double t0, double t_end) {
    if (!(t_end > t0)) throw ValidationError("BadTimeRange", "t_end must exceed t0");
    for (double d : delays)
        if (!(d >= 0.0)) throw ValidationError("NegativeDelay", "delay " + num(d));
    return lattice(delays, t0, {}, t_end);
}

PiecewisePoly solve_exact(const WeightedDelays& prob, const HistorySpec& hist, double t_end,
                          const ExactOptions& options) {
    validate(hist);
    const double t0 = hist.t0;
    if (!(t_end > t0)) throw ValidationError("BadTimeRange", "t_end must exceed t0");
    if (prob.has_zero_delay())
        throw SolverError("ZeroDelayAtom",
                          "exact solver requires positive delays; use the numerical solver");
    if (hist.lower_bound() > t0 - prob.max_delay() + kTimeMergeTol)
        throw SolverError("HistoryGap", "history must cover [" + num(t0 - prob.max_delay()) +
                                            ", " + num(t0) + "]");

    const auto pieces = history_pieces(hist);

    // Interior history knots propagate discontinuities just like t0 does.
    std::vector<double> seeds;
    if (const auto* table = std::get_if<PiecewiseTableHistory>(&hist.shape)) {
        for (double b : table->breakpoints)
            if (b > t0 - prob.max_delay() - kTimeMergeTol && b < t0 - kTimeMergeTol)
                seeds.push_back(b);
    }
    const auto breaks = lattice(prob.delays(), t0, seeds, t_end);

    std::vector<std::vector<double>> segs;
    segs.reserve(breaks.size() - 1);
    double left_value = hist.eval(t0);

    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double bl = breaks[i];
        const double br = breaks[i + 1];
        const double mid = 0.5 * (bl + br);

        std::vector<double> rhs;
        for (const auto& atom : prob.atoms()) {
            // The source interval [bl - delay, br - delay] cannot straddle a
            // breakpoint: any interior one would map to a breakpoint between
            // bl and br. Locate it by midpoint.
            const double lag_mid = mid - atom.delay;
            std::span<const double> src;
            double center = 0.0;
            if (lag_mid <= t0) {
                const auto& piece = find_history_piece(pieces, lag_mid);
                src = *piece.coeffs;
                center = piece.center;
            } else {
                auto it = std::upper_bound(breaks.begin(), breaks.begin() + i + 1, lag_mid);
                const std::size_t j = static_cast<std::size_t>(it - breaks.begin()) - 1;
                src = segs[j];
                center = breaks[j];
            }
            const auto shifted = poly::shift(src, (bl - atom.delay) - center);
            poly::add_scaled(rhs, shifted, prob.alpha() * atom.weight);
        }
        poly::trim(rhs);
        if (rhs.size() > static_cast<std::size_t>(options.max_degree))
            throw SolverError("DegreeLimitExceeded",
                              "segment degree " + std::to_string(rhs.size()) + " exceeds " +
                                  std::to_string(options.max_degree));
        segs.push_back(poly::antiderivative(rhs, left_value));
        left_value = poly::eval(segs.back(), br - bl);
    }
    return PiecewisePoly(breaks, std::move(segs));
}

PiecewisePoly mix(std::span<const PiecewisePoly> parts, std::span<const double> weights) {
    if (parts.empty() || parts.size() != weights.size())
        throw ValidationError("MixArity", "need one weight per part and at least one part");
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    if (std::abs(wsum - 1.0) > 1e-12)
        throw ValidationError("WeightSumMismatch", "weights sum to " + num(wsum));
    const double t_start = parts[0].start_time();
    const double t_end = parts[0].end_time();
    for (const auto& part : parts)
        if (std::abs(part.start_time() - t_start) > kTimeMergeTol ||
            std::abs(part.end_time() - t_end) > kTimeMergeTol)
            throw SolverError("DomainMismatch", "parts cover different time intervals");

    std::vector<double> breaks{t_start};
    for (const auto& part : parts)
        for (double b : part.breakpoints()) insert_merged(breaks, b);

    std::vector<std::vector<double>> segs;
    segs.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
        std::vector<double> acc;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const std::size_t j = parts[k].segment_index(mid);
            const auto shifted =
                poly::shift(parts[k].segment_coeffs(j), breaks[i] - parts[k].breakpoints()[j]);
            poly::add_scaled(acc, shifted, weights[k]);
        }
        if (acc.empty()) acc.push_back(0.0);
        segs.push_back(std::move(acc));
    }
    return PiecewisePoly(std::move(breaks), std::move(segs));
}

}  // namespace ddesim
