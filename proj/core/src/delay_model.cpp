#include "ddesim/delay_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddesim/errors.hpp"
#include "ddesim/gauss_legendre.hpp"
#include "ddesim/polynomial.hpp"

namespace ddesim {

namespace {

constexpr double kProbTol = 1e-12;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

void validate(const DiscreteLaw& law) {
    if (law.atoms.empty()) throw ValidationError("EmptyAtoms", "discrete law has no atoms");
    double sum = 0.0;
    double prev = -kInf;
    for (const auto& atom : law.atoms) {
        if (!(atom.delay >= 0.0))
            throw ValidationError("NegativeDelay", "atom delay " + num(atom.delay));
        if (!(atom.prob > 0.0 && atom.prob <= 1.0))
            throw ValidationError("ProbOutOfRange", "atom probability " + num(atom.prob));
        if (!(atom.delay > prev))
            throw ValidationError("AtomsNotIncreasing",
                                  "delays must be strictly increasing, got " + num(atom.delay) +
                                      " after " + num(prev));
        prev = atom.delay;
        sum += atom.prob;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw ValidationError("ProbSumMismatch", "probabilities sum to " + num(sum));
}

void validate(const ContinuousLaw& law) {
    if (!(law.truncation_eps > 0.0 && law.truncation_eps <= 1e-2))
        throw ValidationError("TruncationEpsOutOfRange",
                              "truncation_eps " + num(law.truncation_eps) + " not in (0, 1e-2]");
    if (const auto* u = std::get_if<UniformLaw>(&law.family)) {
        if (!(u->a >= 0.0 && u->a < u->b))
            throw ValidationError("UniformBounds",
                                  "need 0 <= a < b, got a=" + num(u->a) + " b=" + num(u->b));
    } else if (const auto* e = std::get_if<ExponentialLaw>(&law.family)) {
        if (!(e->rate > 0.0))
            throw ValidationError("NonPositiveRate", "rate " + num(e->rate));
    } else {
        const auto& t = std::get<TabulatedQuantileLaw>(law.family);
        if (t.p.size() != t.q.size() || t.p.size() < 2)
            throw ValidationError("QuantileGridInvalid", "need matching p/q grids with >= 2 rows");
        if (t.p.front() != 0.0 || t.p.back() != 1.0)
            throw ValidationError("QuantileGridInvalid", "p grid must cover [0, 1]");
        for (std::size_t k = 0; k < t.p.size(); ++k) {
            if (k > 0 && !(t.p[k] > t.p[k - 1]))
                throw ValidationError("QuantileGridInvalid", "p grid not strictly increasing");
            if (k > 0 && !(t.q[k] >= t.q[k - 1]))
                throw ValidationError("QuantileGridInvalid", "q grid decreasing");
        }
        if (!(t.q.front() >= 0.0))
            throw ValidationError("QuantileGridInvalid", "q(0) = " + num(t.q.front()) + " < 0");
    }
}

void validate(const DelaySpec& spec) {
    std::visit([](const auto& law) { validate(law); }, spec);
}

// ---------------------------------------------------------------------------
// Sampling, quantiles, densities
// ---------------------------------------------------------------------------

std::size_t sample_atom_index(const DiscreteLaw& law, RngStream& stream) {
    const double u = stream.uniform01();
    double cum = 0.0;
    for (std::size_t i = 0; i < law.atoms.size(); ++i) {
        cum += law.atoms[i].prob;
        if (u <= cum) return i;
    }
    return law.atoms.size() - 1;  // cumulative shy of 1 by rounding
}

double sample_delay(const DelaySpec& spec, RngStream& stream) {
    if (const auto* d = std::get_if<DiscreteLaw>(&spec))
        return d->atoms[sample_atom_index(*d, stream)].delay;
    return quantile(spec, stream.uniform01());
}

namespace {

double quantile_tabulated(const TabulatedQuantileLaw& law, double p) {
    const auto it = std::lower_bound(law.p.begin(), law.p.end(), p);
    if (it == law.p.begin()) return law.q.front();
    if (it == law.p.end()) return law.q.back();
    const std::size_t k = static_cast<std::size_t>(it - law.p.begin());
    const double w = (p - law.p[k - 1]) / (law.p[k] - law.p[k - 1]);
    return law.q[k - 1] + w * (law.q[k] - law.q[k - 1]);
}

}  // namespace

double quantile(const DelaySpec& spec, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("QuantileArgOutOfRange", "p = " + num(p));
    if (const auto* d = std::get_if<DiscreteLaw>(&spec)) {
        double cum = 0.0;
        for (const auto& atom : d->atoms) {
            cum += atom.prob;
            if (cum >= p - kProbTol) return atom.delay;
        }
        return d->atoms.back().delay;
    }
    const auto& law = std::get<ContinuousLaw>(spec);
    if (const auto* u = std::get_if<UniformLaw>(&law.family)) return u->a + p * (u->b - u->a);
    if (const auto* e = std::get_if<ExponentialLaw>(&law.family)) {
        if (p == 1.0) return kInf;
        return -std::log1p(-p) / e->rate;
    }
    return quantile_tabulated(std::get<TabulatedQuantileLaw>(law.family), p);
}

double cdf(const DelaySpec& spec, double x) {
    if (const auto* d = std::get_if<DiscreteLaw>(&spec)) {
        double cum = 0.0;
        for (const auto& atom : d->atoms) {
            if (atom.delay > x) break;
            cum += atom.prob;
        }
        return std::min(cum, 1.0);
    }
    const auto& law = std::get<ContinuousLaw>(spec);
    if (const auto* u = std::get_if<UniformLaw>(&law.family))
        return std::clamp((x - u->a) / (u->b - u->a), 0.0, 1.0);
    if (const auto* e = std::get_if<ExponentialLaw>(&law.family))
        return x <= 0.0 ? 0.0 : -std::expm1(-e->rate * x);
    // Tabulated: invert the piecewise-linear quantile; flat q stretches map to
    // the top of their probability jump.
    const auto& t = std::get<TabulatedQuantileLaw>(law.family);
    if (x < t.q.front()) return 0.0;
    if (x >= t.q.back()) return 1.0;
    const auto it = std::upper_bound(t.q.begin(), t.q.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - t.q.begin());  // q[k-1] <= x < q[k]
    if (t.q[k] == t.q[k - 1]) return t.p[k];
    const double w = (x - t.q[k - 1]) / (t.q[k] - t.q[k - 1]);
    return t.p[k - 1] + w * (t.p[k] - t.p[k - 1]);
}

double density(const ContinuousLaw& law, double x) {
    if (const auto* u = std::get_if<UniformLaw>(&law.family))
        return (x >= u->a && x <= u->b) ? 1.0 / (u->b - u->a) : 0.0;
    if (const auto* e = std::get_if<ExponentialLaw>(&law.family))
        return x < 0.0 ? 0.0 : e->rate * std::exp(-e->rate * x);
    const auto& t = std::get<TabulatedQuantileLaw>(law.family);
    if (x < t.q.front() || x > t.q.back()) return 0.0;
    auto it = std::upper_bound(t.q.begin(), t.q.end(), x);
    std::size_t k = static_cast<std::size_t>(it - t.q.begin());
    if (k == 0) k = 1;
    if (k == t.q.size()) k = t.q.size() - 1;
    const double dq = t.q[k] - t.q[k - 1];
    if (dq <= 0.0) return kInf;  // probability atom inside a nominally continuous law
    return (t.p[k] - t.p[k - 1]) / dq;
}

std::vector<WeightedAtom> discretize(const DelaySpec& spec, int n_nodes) {
    if (is_discrete(spec))
        throw ValidationError("DiscretizeOnDiscrete", "discretize needs a continuous law");
    const auto& law = std::get<ContinuousLaw>(spec);
    validate(law);
    if (n_nodes < 1) throw ValidationError("NonPositiveNodes", "n_nodes must be >= 1");

    double lo, hi;
    if (const auto* u = std::get_if<UniformLaw>(&law.family)) {
        lo = u->a;
        hi = u->b;
    } else {
        lo = quantile(spec, law.truncation_eps);
        hi = quantile(spec, 1.0 - law.truncation_eps);
    }
    if (!(hi > lo))
        throw ValidationError("DegenerateQuadrature",
                              "truncated support [" + num(lo) + ", " + num(hi) + "] is empty");

    const QuadratureRule rule = gauss_legendre(n_nodes);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::vector<WeightedAtom> atoms(static_cast<std::size_t>(n_nodes));
    double sum = 0.0;
    for (int k = 0; k < n_nodes; ++k) {
        const double node = mid + half * rule.nodes[k];
        const double w = rule.weights[k] * half * density(law, node);
        atoms[k] = {node, w};
        sum += w;
    }
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw ValidationError("DegenerateQuadrature", "density vanishes on the quadrature nodes");
    for (auto& atom : atoms) atom.weight /= sum;
    return atoms;
}

double min_delay(const DiscreteLaw& law) {
    return law.atoms.front().delay;
}

double max_delay(const DiscreteLaw& law) {
    return law.atoms.back().delay;
}

// ---------------------------------------------------------------------------
// Histories
// ---------------------------------------------------------------------------

void validate(const HistorySpec& hist) {
    if (const auto* p = std::get_if<PolynomialHistory>(&hist.shape)) {
        if (p->coeffs.empty())
            throw ValidationError("EmptyPolynomial", "polynomial history needs coefficients");
        return;
    }
    if (const auto* t = std::get_if<PiecewiseTableHistory>(&hist.shape)) {
        if (t->breakpoints.size() < 2 || t->coeffs.size() + 1 != t->breakpoints.size())
            throw ValidationError("HistoryCoverage",
                                  "piecewise history needs k+1 breakpoints for k segments");
        for (std::size_t k = 1; k < t->breakpoints.size(); ++k)
            if (!(t->breakpoints[k] > t->breakpoints[k - 1]))
                throw ValidationError("HistoryCoverage", "breakpoints not strictly increasing");
        if (std::abs(t->breakpoints.back() - hist.t0) > 1e-9)
            throw ValidationError("HistoryCoverage",
                                  "last breakpoint " + num(t->breakpoints.back()) +
                                      " must equal t0 = " + num(hist.t0));
        for (const auto& c : t->coeffs)
            if (c.empty())
                throw ValidationError("HistoryCoverage", "empty segment coefficients");
    }
}

double HistorySpec::eval(double t) const {
    if (t > t0 + 1e-9)
        throw SolverError("DomainError", "history evaluated at t = " + num(t) + " > t0");
    if (const auto* c = std::get_if<ConstantHistory>(&shape)) return c->value;
    if (const auto* p = std::get_if<PolynomialHistory>(&shape))
        return poly::eval(p->coeffs, t - t0);
    const auto& table = std::get<PiecewiseTableHistory>(shape);
    const auto& b = table.breakpoints;
    if (t < b.front() - 1e-9)
        throw SolverError("HistoryGap",
                          "history starts at " + num(b.front()) + ", needed at " + num(t));
    // Right-closed segments, matching the solution convention.
    auto it = std::lower_bound(b.begin(), b.end(), t);
    std::size_t seg = it == b.begin() ? 0 : static_cast<std::size_t>(it - b.begin()) - 1;
    if (seg >= table.coeffs.size()) seg = table.coeffs.size() - 1;
    return poly::eval(table.coeffs[seg], t - b[seg]);
}

double HistorySpec::lower_bound() const {
    if (const auto* t = std::get_if<PiecewiseTableHistory>(&shape)) return t->breakpoints.front();
    return -kInf;
}

bool HistorySpec::is_constant() const noexcept {
    return std::holds_alternative<ConstantHistory>(shape);
}

}  // namespace ddesim
