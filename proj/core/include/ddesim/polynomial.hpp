#pragma once

#include <span>
#include <vector>

namespace ddesim::poly {

// Dense coefficients, lowest power first: c[0] + c[1]*x + c[2]*x^2 + ...
// An empty span is the zero polynomial.

double eval(std::span<const double> c, double x);

std::vector<double> derivative(std::span<const double> c);

// Antiderivative whose value at x = 0 is value_at_zero.
std::vector<double> antiderivative(std::span<const double> c, double value_at_zero);

// Coefficients of p(x + offset).
std::vector<double> shift(std::span<const double> c, double offset);

// acc += scale * c, extending acc as needed.
void add_scaled(std::vector<double>& acc, std::span<const double> c, double scale);

// Drop trailing coefficients that are exactly zero.
void trim(std::vector<double>& c);

}  // namespace ddesim::poly
