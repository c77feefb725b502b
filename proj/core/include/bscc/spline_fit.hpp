#pragma once

#include <array>
#include <span>
#include <vector>

#include "bscc/banded.hpp"
#include "bscc/knots.hpp"

namespace bscc {

/// Rectangular interpolation system: row i holds the cubic basis values at
/// node i over the 4-clamped knot vector built from the nodes. M rows by
/// M + 2 columns, at most 4 stored entries per row, each row summing to 1.
struct RectSystem {
  struct Row {
    int first_col = 0;
    int count = 0;
    std::array<double, 4> values{};
  };

  int rows = 0;
  int cols = 0;
  std::vector<Row> row_entries;
  KnotVector knot_vector;

  [[nodiscard]] double at(int i, int j) const;
  [[nodiscard]] std::vector<std::vector<double>> to_dense() const;
};

/// Right-hand sides of the square system: per channel, the node samples
/// bordered by one zero on each end for the natural boundary rows.
struct RhsTable {
  int rows = 0;                               // M + 2
  std::vector<std::vector<double>> columns;   // one per channel
};

/// Natural cubic spline through the fitted nodes. Coefficients are stored
/// channel-major, M + 2 per scalar channel.
struct CubicSplineInterpolant {
  std::vector<double> nodes;
  KnotVector knot_vector;
  std::vector<std::vector<double>> coeffs;

  [[nodiscard]] std::size_t num_channels() const { return coeffs.size(); }

  /// Spline values at z, one per channel.
  [[nodiscard]] std::vector<double> evaluate(double z) const;

  [[nodiscard]] double evaluate_channel(std::size_t channel, double z) const;

  /// s''(z) for one channel; used to check the natural boundary conditions.
  [[nodiscard]] double second_derivative_channel(std::size_t channel,
                                                 double z) const;
};

/// Builds the M x (M + 2) cubic collocation system over strictly increasing
/// nodes (M >= 4, TooFewNodes otherwise).
RectSystem build_rect_matrix(std::span<const double> nodes);

/// Square (M + 2) x (M + 2) system: the collocation rows of
/// build_rect_matrix bordered by the two natural-boundary rows of basis
/// second derivatives at the end nodes. Lower and upper bandwidth 2.
BandedMatrix build_square_system(std::span<const double> nodes);

/// Zero-bordered right-hand-side table for the square system; every channel
/// must have one sample per node (ShapeError).
RhsTable build_rhs_table(const std::vector<std::vector<double>>& samples);

/// Interpolates every channel with one natural cubic spline fit: the square
/// system is assembled and factored once, then solved per channel.
CubicSplineInterpolant fit_natural_cubic(
    std::span<const double> nodes,
    const std::vector<std::vector<double>>& samples);

}  // namespace bscc
