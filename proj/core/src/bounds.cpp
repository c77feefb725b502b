#include "bscc/bounds.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bscc/errors.hpp"
#include "bscc/spline_fit.hpp"

namespace bscc {

namespace {

void check_bound_inputs(const BoundInputs& in) {
  if (in.n < 3 || in.s < 0 || in.s >= in.n - 2) {
    throw InvalidInput("straggler count must satisfy 0 <= s < n - 2");
  }
  if (!(in.c > 0.0) || !(in.c1 > 0.0) || in.g4_sup < 0.0) {
    throw InvalidInput("bound constants must be positive and g4_sup >= 0");
  }
}

}  // namespace

KnotSpacingStats knot_spacing_stats(std::span<const double> nodes) {
  if (nodes.size() < 2) {
    throw InvalidNodes("spacing stats need at least 2 nodes");
  }
  KnotSpacingStats stats;
  stats.h_max = 0.0;
  stats.h_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double h = nodes[i + 1] - nodes[i];
    if (!(h > 0.0)) throw InvalidNodes("nodes must be strictly increasing");
    stats.h_max = std::max(stats.h_max, h);
    stats.h_min = std::min(stats.h_min, h);
  }
  stats.ratio = stats.h_max / stats.h_min;
  return stats;
}

double operator_norm_upper_bound(std::span<const double> nodes) {
  if (nodes.size() > 2000) {
    throw InvalidInput("operator norm bound is a dense diagnostic, "
                       "capped at 2000 nodes");
  }
  const BandedMatrix sys = build_square_system(nodes);
  const int order = sys.order();

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    for (int j = std::max(0, i - 2); j <= std::min(order - 1, i + 2); ++j) {
      dense(i, j) = sys.at(i, j);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
  if (!lu.isInvertible()) {
    throw SingularMatrix("square system not invertible");
  }
  const Eigen::MatrixXd inverse = lu.inverse();

  // Drop the boundary-condition columns; the survivor samples feed only the
  // interior columns of the inverse.
  double bound = 0.0;
  for (int i = 0; i < order; ++i) {
    double row_sum = 0.0;
    for (int j = 1; j < order - 1; ++j) row_sum += std::abs(inverse(i, j));
    bound = std::max(bound, row_sum);
  }
  return bound;
}

double corollary_bound(const BoundInputs& inputs,
                       const KnotSpacingStats& stats) {
  check_bound_inputs(inputs);
  const double effective_n = static_cast<double>(inputs.n - inputs.s);
  const double h4 = stats.h_max * stats.h_max * stats.h_max * stats.h_max;
  return inputs.c * (1.0 + inputs.c1 * (effective_n + 2.0) * stats.ratio) *
         h4 * inputs.g4_sup;
}

double theorem2_bound(const BoundInputs& inputs,
                      const KnotSpacingStats& stats) {
  check_bound_inputs(inputs);
  if (!inputs.d_inf.has_value()) {
    throw MissingInput("theorem2_bound needs the best-approximation "
                       "distance d_inf");
  }
  const double effective_n = static_cast<double>(inputs.n - inputs.s);
  return (1.0 + inputs.c1 * (effective_n + 2.0) * stats.ratio) *
         inputs.d_inf.value();
}

double bscc_cheby_bound(const BoundInputs& inputs, double h_min) {
  check_bound_inputs(inputs);
  if (!(h_min > 0.0)) throw InvalidInput("h_min must be positive");
  const double x = std::sin((inputs.s + 1) * std::numbers::pi /
                            (2.0 * inputs.n));
  const double x4 = x * x * x * x;
  const double effective_n = static_cast<double>(inputs.n - inputs.s);
  return 2.0 * inputs.c *
         (x4 + inputs.c1 * (effective_n + 2.0) / h_min * x4 * x) *
         inputs.g4_sup;
}

double bacc_bound(int n, int s) {
  if (n < 1 || s < 0 || s >= n) {
    throw InvalidInput("bacc_bound needs 0 <= s < n");
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return (1.0 + (1.0 + s) * (3.0 + s) * pi2 / 4.0) *
         std::sin((s + 1) * std::numbers::pi / (2.0 * n));
}

double estimate_fourth_derivative_sup(const std::function<double(double)>& g,
                                      double lo, double hi, int grid_size) {
  if (!(lo < hi)) throw InvalidRange("empty interval");
  if (grid_size < 8) throw InvalidInput("grid too coarse");

  const double step = (hi - lo) / grid_size;
  const double inv_h4 = 1.0 / (step * step * step * step);
  double sup = 0.0;
  // Five-point stencil; the grid stays 2 steps inside the interval.
  for (int i = 2; i <= grid_size - 2; ++i) {
    const double x = lo + i * step;
    const double d4 = (g(x - 2 * step) - 4.0 * g(x - step) + 6.0 * g(x) -
                       4.0 * g(x + step) + g(x + 2 * step)) *
                      inv_h4;
    if (!std::isfinite(d4)) {
      throw NumericalOverflow("non-finite sample in fourth-derivative "
                              "estimate");
    }
    sup = std::max(sup, std::abs(d4));
  }
  return sup;
}

double decay_slope(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) {
    throw InvalidInput("slope estimate needs at least 3 (n, error) pairs");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [n, error] : pairs) {
    if (!(n > 0.0) || !(error > 0.0)) {
      throw InvalidInput("slope estimate needs positive n and error values");
    }
    const double x = std::log(n);
    const double y = std::log(error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = static_cast<double>(pairs.size());
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace bscc
