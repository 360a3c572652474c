#include "ddesim/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddesim/errors.hpp"
#include "ddesim/polynomial.hpp"

namespace ddesim {

namespace {

constexpr double kDomainSlack = 1e-9;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints,
                             std::vector<std::vector<double>> segments)
    : breaks_(std::move(breakpoints)), segs_(std::move(segments)) {
    if (breaks_.size() < 2 || segs_.size() + 1 != breaks_.size())
        throw ValidationError("PiecewiseShape", "need k+1 breakpoints for k >= 1 segments");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        if (!(breaks_[i] > breaks_[i - 1]))
            throw ValidationError("PiecewiseShape", "breakpoints not strictly increasing");
    for (const auto& seg : segs_)
        if (seg.empty()) throw ValidationError("PiecewiseShape", "empty segment");
    for (std::size_t i = 0; i + 1 < segs_.size(); ++i) {
        const double left = poly::eval(segs_[i], breaks_[i + 1] - breaks_[i]);
        const double right = segs_[i + 1].front();
        if (std::abs(left - right) > 1e-12 * (1.0 + std::abs(right)))
            throw ValidationError("ContinuityViolation",
                                  "jump at t = " + num(breaks_[i + 1]) + ": " + num(left) +
                                      " vs " + num(right));
    }
}

std::size_t PiecewisePoly::segment_index(double t) const {
    if (t < breaks_.front() - kDomainSlack || t > breaks_.back() + kDomainSlack)
        throw SolverError("DomainError", "t = " + num(t) + " outside [" + num(breaks_.front()) +
                                             ", " + num(breaks_.back()) + "]");
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    if (it == breaks_.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(i, segs_.size() - 1);
}

double PiecewisePoly::eval(double t) const {
    const std::size_t i = segment_index(t);
    return poly::eval(segs_[i], t - breaks_[i]);
}

double PiecewisePoly::eval_derivative(double t) const {
    const std::size_t i = segment_index(t);
    const auto d = poly::derivative(segs_[i]);
    return poly::eval(d, t - breaks_[i]);
}

std::vector<double> PiecewisePoly::eval_on(std::span<const double> ts) const {
    std::vector<double> out(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) out[k] = eval(ts[k]);
    return out;
}

std::size_t PiecewisePoly::max_degree() const {
    std::size_t d = 0;
    for (const auto& seg : segs_) d = std::max(d, seg.size() - 1);
    return d;
}

}  // namespace ddesim
