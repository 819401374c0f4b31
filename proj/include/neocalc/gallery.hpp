#pragma once

// Test functions with known derivative behaviour, plus data-backed oracles.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neocalc/fuzzy_derivatives.hpp"

namespace neocalc::gallery {

FunctionOracle abs();
FunctionOracle square();
FunctionOracle linear(double m, double c);
/// b + ((1 - b) / a) x on [0, a], (1 - x) / (1 - a) on (a, 1]. Requires
/// 0 < a < 1 and finite b; the domain is [0, 1].
FunctionOracle skew_tent(double a, double b);
/// sum_{n=1..depth} g(4^(n-1) x) / 4^(n-1), g(y) = distance from y to the
/// nearest integer.
FunctionOracle van_der_waerden(int depth);
/// |x| away from 0, and 1 at 0.
FunctionOracle spike_remark33();

/// Parses "abs", "square", "linear:m,c", "skew_tent:a,b", "vdw:depth",
/// "spike33". Throws ParseError for unknown names or malformed parameter
/// lists and std::invalid_argument for out-of-range parameters.
FunctionOracle from_spec(std::string_view spec);

/// Spec strings accepted by from_spec, with parameter placeholders.
std::vector<std::string> names();

/// Piecewise-linear interpolant through (xs, ys) on [xs.front(), xs.back()].
/// xs must be strictly increasing with at least 2 points; mesh_spacing is the
/// largest gap so ladders never probe below the data resolution.
FunctionOracle sampled(std::vector<double> xs, std::vector<double> ys);

/// Ladder for a van der Waerden partial sum whose floor is half the period of
/// its finest term. Below that scale the partial sum is piecewise linear and
/// would look classically differentiable almost everywhere.
ScaleLadder vdw_ladder(int depth);

}  // namespace neocalc::gallery
