#include "ddesim/polynomial.hpp"

#include <cstddef>

namespace ddesim::poly {

double eval(std::span<const double> c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

std::vector<double> derivative(std::span<const double> c) {
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

std::vector<double> antiderivative(std::span<const double> c, double value_at_zero) {
    std::vector<double> a(c.size() + 1);
    a[0] = value_at_zero;
    for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / static_cast<double>(k + 1);
    return a;
}

std::vector<double> shift(std::span<const double> c, double offset) {
    std::vector<double> b(c.begin(), c.end());
    if (b.size() < 2 || offset == 0.0) return b;
    // Synthetic Horner (Taylor shift): after pass k, b[k] is final.
    const std::size_t n = b.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = n - 1; j-- > k;) b[j] += offset * b[j + 1];
    }
    return b;
}

void add_scaled(std::vector<double>& acc, std::span<const double> c, double scale) {
    if (acc.size() < c.size()) acc.resize(c.size(), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) acc[k] += scale * c[k];
}

void trim(std::vector<double>& c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

}  // namespace ddesim::poly
