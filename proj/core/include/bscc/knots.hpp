#pragma once

#include <span>
#include <vector>

namespace bscc {

/// Non-decreasing knot sequence together with the degree it serves.
///
/// A knot vector with m knots and degree p supports m - p - 1 basis
/// functions B_{0,p}, ..., B_{m-p-2,p}. Clamped vectors carry endpoint
/// multiplicity p + 1 so that the spline interpolates at both interval ends.
/// Instances are immutable after construction and safe to share across
/// threads.
struct KnotVector {
  std::vector<double> knots;
  int degree = 0;
  bool clamped = false;

  /// Number of knots m.
  [[nodiscard]] int size() const { return static_cast<int>(knots.size()); }

  /// Number of basis functions m - p - 1.
  [[nodiscard]] int num_basis() const { return size() - degree - 1; }

  [[nodiscard]] double domain_start() const { return knots.front(); }
  [[nodiscard]] double domain_end() const { return knots.back(); }

  /// Index i of the knot span [t_i, t_{i+1}) containing z. The last
  /// non-degenerate span is treated as closed on the right so that
  /// z == domain_end() resolves to it.
  [[nodiscard]] int find_span(double z) const;
};

/// Inclusive index range [lo, hi] of basis functions possibly nonzero at a
/// query point. At most p + 1 wide.
struct BasisIndexRange {
  int lo = 0;
  int hi = 0;

  [[nodiscard]] int width() const { return hi - lo + 1; }
  [[nodiscard]] bool contains(int j) const { return j >= lo && j <= hi; }
};

/// Builds the (p+1)-clamped knot vector over strictly increasing points:
/// the first and last points are repeated p + 1 times around the interior
/// points. Requires at least p + 1 points; throws TooFewNodes otherwise and
/// InvalidNodes if the points are not strictly increasing.
KnotVector make_clamped_knots(std::span<const double> points, int degree);

/// Evaluates B_{j,p}(z) by the Cox-de Boor recursion. Terms with a zero
/// denominator are dropped. The last non-degenerate interval is closed on
/// the right, so on a clamped vector the final basis function is 1 at the
/// right endpoint.
///
/// Throws IndexError when j is outside [0, m - p - 2] and DomainError when z
/// lies outside [t_0, t_{m-1}].
double basis_value(const KnotVector& kv, int j, int p, double z);

/// Second derivative of B_{j,p} at z, computed by applying the standard knot
/// differencing derivative identity twice (degree p -> p-1 -> p-2), dropping
/// zero-denominator terms. Requires p >= 2 (DegreeError otherwise).
double basis_second_derivative(const KnotVector& kv, int j, int p, double z);

/// Consecutive indices of the <= p + 1 basis functions whose support covers
/// z; basis_value is exactly zero for every index outside the range.
BasisIndexRange active_basis_range(const KnotVector& kv, int p, double z);

/// Spline value sum_j coeffs[j] * B_{j,p}(z) for one coefficient channel,
/// using only the active basis range. The coefficient vector length must
/// equal the number of basis functions (ShapeError).
double eval_spline(std::span<const double> coeffs, const KnotVector& kv,
                   int p, double z);

/// Multi-channel evaluation: one spline value per coefficient channel, with
/// the basis values computed once and shared across channels.
std::vector<double> eval_spline(const std::vector<std::vector<double>>& coeffs,
                                const KnotVector& kv, int p, double z);

}  // namespace bscc
