#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bscc {

/// Extreme spacings between consecutive distinct nodes.
struct KnotSpacingStats {
  double h_max = 0.0;
  double h_min = 0.0;
  double ratio = 1.0;  // h_max / h_min
};

/// Inputs shared by the error-bound evaluators. The constants c and c1 exist
/// in the bounds but have no published values; both default to 1 and can be
/// calibrated by the caller. d_inf is the best-approximation distance of the
/// target from the spline space, which has no closed form and must be
/// supplied when needed.
struct BoundInputs {
  int n = 0;
  int s = 0;
  double c = 1.0;
  double c1 = 1.0;
  double g4_sup = 0.0;  // sup-norm of the fourth derivative of g
  std::optional<double> d_inf;
};

/// Consecutive-difference extremes over >= 2 strictly increasing nodes.
KnotSpacingStats knot_spacing_stats(std::span<const double> nodes);

/// Upper bound on the sup-norm of the interpolation operator: the square
/// system is inverted densely, its first and last columns are dropped, and
/// the largest absolute row sum of the remaining submatrix is returned.
/// Diagnostic-quality O(M^3); rejects more than 2000 nodes.
double operator_norm_upper_bound(std::span<const double> nodes);

/// Smooth-function error bound
///   c * (1 + c1 * (n - s + 2) * h_max/h_min) * h_max^4 * g4_sup,
/// with the spacing stats taken over the survivor nodes.
double corollary_bound(const BoundInputs& inputs,
                       const KnotSpacingStats& stats);

/// General error bound (1 + c1 * (n - s + 2) * h_max/h_min) * d_inf; throws
/// MissingInput when d_inf is absent.
double theorem2_bound(const BoundInputs& inputs,
                      const KnotSpacingStats& stats);

/// Specialization of the smooth-function bound to Chebyshev points of the
/// second kind with s stragglers:
///   2c * (sin^4((s+1)pi/2n) + (c1*(n-s+2)/h_min) * sin^5((s+1)pi/2n)) * g4_sup.
double bscc_cheby_bound(const BoundInputs& inputs, double h_min);

/// Berrut-decoder error bound (1 + (1+s)(3+s)pi^2/4) * sin((s+1)pi/2n).
double bacc_bound(int n, int s);

/// Grid maximum of the five-point central fourth difference of g with step
/// (hi - lo) / grid_size; truncation O(step^2), roundoff O(eps / step^4).
/// The default grid keeps both error terms near 1e-5 on O(1) intervals; finer
/// grids amplify roundoff. Throws NumericalOverflow on non-finite samples.
double estimate_fourth_derivative_sup(const std::function<double(double)>& g,
                                      double lo, double hi,
                                      int grid_size = 500);

/// Least-squares slope of log(error) against log(n) over (n, error) pairs;
/// needs >= 3 pairs with positive errors.
double decay_slope(std::span<const std::pair<double, double>> pairs);

}  // namespace bscc
