#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ddesim {

/// Piecewise polynomial on [breakpoints.front(), breakpoints.back()].
/// Segment i covers (breakpoints[i], breakpoints[i+1]] (right-closed; the
/// left domain endpoint belongs to segment 0) with coefficients in powers of
/// (t - breakpoints[i]). Value-continuous at interior breakpoints within
/// 1e-12 relative tolerance; the constructor enforces this.
class PiecewisePoly {
public:
    PiecewisePoly(std::vector<double> breakpoints, std::vector<std::vector<double>> segments);

    double start_time() const noexcept { return breaks_.front(); }
    double end_time() const noexcept { return breaks_.back(); }
    std::size_t segment_count() const noexcept { return segs_.size(); }
    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<double>& segment_coeffs(std::size_t i) const { return segs_[i]; }

    /// Index of the segment containing t under the right-closed convention.
    std::size_t segment_index(double t) const;

    double eval(double t) const;
    double eval_derivative(double t) const;
    std::vector<double> eval_on(std::span<const double> ts) const;

    std::size_t max_degree() const;

private:
    std::vector<double> breaks_;
    std::vector<std::vector<double>> segs_;
};

}  // namespace ddesim
