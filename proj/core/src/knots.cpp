#include "bscc/knots.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "bscc/errors.hpp"

namespace bscc {

namespace {

constexpr int kMaxLocalDegree = 8;  // fits the working triangle on the stack

void check_point_in_domain(const KnotVector& kv, double z) {
  if (!(z >= kv.domain_start() && z <= kv.domain_end())) {
    throw DomainError("query point " + std::to_string(z) +
                      " outside knot span [" +
                      std::to_string(kv.domain_start()) + ", " +
                      std::to_string(kv.domain_end()) + "]");
  }
}

void check_basis_index(const KnotVector& kv, int j, int p) {
  if (p < 0 || kv.size() < p + 2) {
    throw DegreeError("knot vector of length " + std::to_string(kv.size()) +
                      " cannot host degree " + std::to_string(p));
  }
  if (j < 0 || j > kv.size() - p - 2) {
    throw IndexError("basis index " + std::to_string(j) +
                     " out of range [0, " + std::to_string(kv.size() - p - 2) +
                     "]");
  }
}

// Degree-0 basis: indicator of [t_k, t_{k+1}), closed on the right when the
// interval ends at the final knot.
double degree0(const std::vector<double>& t, int k, double z) {
  if (z >= t[k] && z < t[k + 1]) return 1.0;
  if (z == t[k + 1] && t[k] < t[k + 1] && t[k + 1] == t.back()) return 1.0;
  return 0.0;
}

// B_{j,p}(z) without argument checking; shared by value and derivative paths.
double basis_value_unchecked(const KnotVector& kv, int j, int p, double z) {
  const std::vector<double>& t = kv.knots;
  if (p == 0) return degree0(t, j, z);

  if (p <= kMaxLocalDegree) {
    std::array<double, kMaxLocalDegree + 1> vals{};
    for (int r = 0; r <= p; ++r) vals[r] = degree0(t, j + r, z);
    for (int d = 1; d <= p; ++d) {
      for (int r = 0; r + d <= p; ++r) {
        const int k = j + r;
        const double den_l = t[k + d] - t[k];
        const double den_r = t[k + d + 1] - t[k + 1];
        double v = 0.0;
        if (den_l > 0.0) v += (z - t[k]) / den_l * vals[r];
        if (den_r > 0.0) v += (t[k + d + 1] - z) / den_r * vals[r + 1];
        vals[r] = v;
      }
    }
    return vals[0];
  }

  std::vector<double> vals(p + 1);
  for (int r = 0; r <= p; ++r) vals[r] = degree0(t, j + r, z);
  for (int d = 1; d <= p; ++d) {
    for (int r = 0; r + d <= p; ++r) {
      const int k = j + r;
      const double den_l = t[k + d] - t[k];
      const double den_r = t[k + d + 1] - t[k + 1];
      double v = 0.0;
      if (den_l > 0.0) v += (z - t[k]) / den_l * vals[r];
      if (den_r > 0.0) v += (t[k + d + 1] - z) / den_r * vals[r + 1];
      vals[r] = v;
    }
  }
  return vals[0];
}

// First derivative of B_{j,p} by the knot differencing identity,
// p * (B_{j,p-1}/(t_{j+p}-t_j) - B_{j+1,p-1}/(t_{j+p+1}-t_{j+1})).
double basis_first_derivative_unchecked(const KnotVector& kv, int j, int p,
                                        double z) {
  const std::vector<double>& t = kv.knots;
  double d = 0.0;
  const double den_l = t[j + p] - t[j];
  if (den_l > 0.0) d += basis_value_unchecked(kv, j, p - 1, z) / den_l;
  const double den_r = t[j + p + 1] - t[j + 1];
  if (den_r > 0.0) d -= basis_value_unchecked(kv, j + 1, p - 1, z) / den_r;
  return p * d;
}

}  // namespace

int KnotVector::find_span(double z) const {
  if (z == domain_end()) {
    int i = size() - 2;
    while (i > 0 && knots[i] == knots[i + 1]) --i;
    return i;
  }
  auto it = std::upper_bound(knots.begin(), knots.end(), z);
  return static_cast<int>(it - knots.begin()) - 1;
}

KnotVector make_clamped_knots(std::span<const double> points, int degree) {
  if (degree < 0) throw DegreeError("negative spline degree");
  const int n = static_cast<int>(points.size());
  if (n <= degree) {
    throw TooFewNodes("clamped degree-" + std::to_string(degree) +
                      " knot vector needs more than " +
                      std::to_string(degree) + " points, got " +
                      std::to_string(n));
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(points[i] < points[i + 1])) {
      throw InvalidNodes("evaluation points must be strictly increasing");
    }
  }

  KnotVector kv;
  kv.degree = degree;
  kv.clamped = true;
  kv.knots.reserve(static_cast<std::size_t>(n) + 2 * degree);
  kv.knots.insert(kv.knots.end(), degree + 1, points.front());
  kv.knots.insert(kv.knots.end(), points.begin() + 1, points.end() - 1);
  kv.knots.insert(kv.knots.end(), degree + 1, points.back());
  return kv;
}

double basis_value(const KnotVector& kv, int j, int p, double z) {
  check_basis_index(kv, j, p);
  check_point_in_domain(kv, z);
  return basis_value_unchecked(kv, j, p, z);
}

double basis_second_derivative(const KnotVector& kv, int j, int p, double z) {
  if (p < 2) {
    throw DegreeError("second derivative needs degree >= 2, got " +
                      std::to_string(p));
  }
  check_basis_index(kv, j, p);
  check_point_in_domain(kv, z);

  const std::vector<double>& t = kv.knots;
  double d = 0.0;
  const double den_l = t[j + p] - t[j];
  if (den_l > 0.0) {
    d += basis_first_derivative_unchecked(kv, j, p - 1, z) / den_l;
  }
  const double den_r = t[j + p + 1] - t[j + 1];
  if (den_r > 0.0) {
    d -= basis_first_derivative_unchecked(kv, j + 1, p - 1, z) / den_r;
  }
  return p * d;
}

BasisIndexRange active_basis_range(const KnotVector& kv, int p, double z) {
  if (p < 0 || kv.size() < p + 2) {
    throw DegreeError("knot vector too short for degree " + std::to_string(p));
  }
  check_point_in_domain(kv, z);
  const int span = kv.find_span(z);
  BasisIndexRange r;
  r.lo = std::max(0, span - p);
  r.hi = std::min(kv.size() - p - 2, span);
  return r;
}

double eval_spline(std::span<const double> coeffs, const KnotVector& kv,
                   int p, double z) {
  if (static_cast<int>(coeffs.size()) != kv.size() - p - 1) {
    throw ShapeError("coefficient vector length " +
                     std::to_string(coeffs.size()) + " != basis count " +
                     std::to_string(kv.size() - p - 1));
  }
  const BasisIndexRange r = active_basis_range(kv, p, z);
  double acc = 0.0;
  for (int j = r.lo; j <= r.hi; ++j) {
    acc += coeffs[static_cast<std::size_t>(j)] *
           basis_value_unchecked(kv, j, p, z);
  }
  return acc;
}

std::vector<double> eval_spline(const std::vector<std::vector<double>>& coeffs,
                                const KnotVector& kv, int p, double z) {
  const int nb = kv.size() - p - 1;
  for (const auto& channel : coeffs) {
    if (static_cast<int>(channel.size()) != nb) {
      throw ShapeError("coefficient channel length " +
                       std::to_string(channel.size()) + " != basis count " +
                       std::to_string(nb));
    }
  }
  const BasisIndexRange r = active_basis_range(kv, p, z);
  std::vector<double> basis(static_cast<std::size_t>(r.width()));
  for (int j = r.lo; j <= r.hi; ++j) {
    basis[static_cast<std::size_t>(j - r.lo)] =
        basis_value_unchecked(kv, j, p, z);
  }
  std::vector<double> out(coeffs.size());
  for (std::size_t ch = 0; ch < coeffs.size(); ++ch) {
    double acc = 0.0;
    for (int j = r.lo; j <= r.hi; ++j) {
      acc += coeffs[ch][static_cast<std::size_t>(j)] *
             basis[static_cast<std::size_t>(j - r.lo)];
    }
    out[ch] = acc;
  }
  return out;
}

}  // namespace bscc
