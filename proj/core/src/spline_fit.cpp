#include "bscc/spline_fit.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "bscc/errors.hpp"

namespace bscc {

namespace {

constexpr int kDegree = 3;

void check_nodes(std::span<const double> nodes) {
  if (nodes.size() < 4) {
    throw TooFewNodes("cubic fit needs at least 4 distinct nodes, got " +
                      std::to_string(nodes.size()));
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1])) {
      throw InvalidNodes("nodes must be strictly increasing");
    }
  }
}

}  // namespace

double RectSystem::at(int i, int j) const {
  if (i < 0 || i >= rows || j < 0 || j >= cols) {
    throw IndexError("rect system index out of range");
  }
  const Row& r = row_entries[static_cast<std::size_t>(i)];
  if (j < r.first_col || j >= r.first_col + r.count) return 0.0;
  return r.values[static_cast<std::size_t>(j - r.first_col)];
}

std::vector<std::vector<double>> RectSystem::to_dense() const {
  std::vector<std::vector<double>> dense(
      static_cast<std::size_t>(rows),
      std::vector<double>(static_cast<std::size_t>(cols), 0.0));
  for (int i = 0; i < rows; ++i) {
    const Row& r = row_entries[static_cast<std::size_t>(i)];
    for (int k = 0; k < r.count; ++k) {
      dense[i][r.first_col + k] = r.values[static_cast<std::size_t>(k)];
    }
  }
  return dense;
}

RectSystem build_rect_matrix(std::span<const double> nodes) {
  check_nodes(nodes);
  RectSystem sys;
  sys.rows = static_cast<int>(nodes.size());
  sys.cols = sys.rows + 2;
  sys.knot_vector = make_clamped_knots(nodes, kDegree);
  sys.row_entries.resize(static_cast<std::size_t>(sys.rows));

  for (int i = 0; i < sys.rows; ++i) {
    const BasisIndexRange r =
        active_basis_range(sys.knot_vector, kDegree, nodes[i]);
    RectSystem::Row& row = sys.row_entries[static_cast<std::size_t>(i)];
    row.first_col = r.lo;
    row.count = r.width();
    for (int j = r.lo; j <= r.hi; ++j) {
      row.values[static_cast<std::size_t>(j - r.lo)] =
          basis_value(sys.knot_vector, j, kDegree, nodes[i]);
    }
  }
  return sys;
}

BandedMatrix build_square_system(std::span<const double> nodes) {
  const RectSystem rect = build_rect_matrix(nodes);
  const int m = rect.rows;
  BandedMatrix sys(m + 2, 2, 2);

  // Natural boundary rows: basis second derivatives at the end nodes.
  // Entries beyond the band are exact zeros of the clamped basis.
  const KnotVector& kv = rect.knot_vector;
  for (const auto& [row, z] :
       {std::pair<int, double>{0, nodes.front()},
        std::pair<int, double>{m + 1, nodes.back()}}) {
    const BasisIndexRange r = active_basis_range(kv, kDegree, z);
    for (int j = r.lo; j <= r.hi; ++j) {
      const double value = basis_second_derivative(kv, j, kDegree, z);
      if (value != 0.0) sys.set(row, j, value);
    }
  }

  for (int i = 0; i < m; ++i) {
    const RectSystem::Row& row = rect.row_entries[static_cast<std::size_t>(i)];
    for (int k = 0; k < row.count; ++k) {
      const double value = row.values[static_cast<std::size_t>(k)];
      if (value != 0.0) sys.set(i + 1, row.first_col + k, value);
    }
  }
  return sys;
}

RhsTable build_rhs_table(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw ShapeError("no sample channels");
  const std::size_t m = samples.front().size();
  RhsTable table;
  table.rows = static_cast<int>(m) + 2;
  table.columns.reserve(samples.size());
  for (const auto& channel : samples) {
    if (channel.size() != m) {
      throw ShapeError("sample channels differ in length");
    }
    std::vector<double> column(m + 2, 0.0);
    std::copy(channel.begin(), channel.end(), column.begin() + 1);
    table.columns.push_back(std::move(column));
  }
  return table;
}

CubicSplineInterpolant fit_natural_cubic(
    std::span<const double> nodes,
    const std::vector<std::vector<double>>& samples) {
  check_nodes(nodes);
  if (samples.empty()) throw ShapeError("no sample channels");
  for (const auto& channel : samples) {
    if (channel.size() != nodes.size()) {
      throw ShapeError("channel length " + std::to_string(channel.size()) +
                       " != node count " + std::to_string(nodes.size()));
    }
  }

  const BandedMatrix sys = build_square_system(nodes);
  const BandedLU lu = banded_lu_factor(sys);
  const RhsTable rhs = build_rhs_table(samples);

  CubicSplineInterpolant spline;
  spline.nodes.assign(nodes.begin(), nodes.end());
  spline.knot_vector = make_clamped_knots(nodes, kDegree);
  spline.coeffs = lu.solve(rhs.columns);
  return spline;
}

std::vector<double> CubicSplineInterpolant::evaluate(double z) const {
  return eval_spline(coeffs, knot_vector, kDegree, z);
}

double CubicSplineInterpolant::evaluate_channel(std::size_t channel,
                                                double z) const {
  if (channel >= coeffs.size()) throw IndexError("channel out of range");
  return eval_spline(coeffs[channel], knot_vector, kDegree, z);
}

double CubicSplineInterpolant::second_derivative_channel(std::size_t channel,
                                                         double z) const {
  if (channel >= coeffs.size()) throw IndexError("channel out of range");
  const BasisIndexRange r = active_basis_range(knot_vector, kDegree, z);
  double acc = 0.0;
  for (int j = r.lo; j <= r.hi; ++j) {
    acc += coeffs[channel][static_cast<std::size_t>(j)] *
           basis_second_derivative(knot_vector, j, kDegree, z);
  }
  return acc;
}

}  // namespace bscc
