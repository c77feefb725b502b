#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bscc/spline_fit.hpp"

namespace bscc {

/// Dense real matrix used for data blocks and worker payloads.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }

  [[nodiscard]] std::span<const double> values() const { return data_; }
  [[nodiscard]] std::span<double> values() { return data_; }

  [[nodiscard]] bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + j;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Ordered data blocks held by the master; all blocks share one shape and
/// there are at least two of them.
struct Dataset {
  std::vector<Matrix> blocks;

  [[nodiscard]] int num_blocks() const {
    return static_cast<int>(blocks.size());
  }

  /// Throws ShapeError / InvalidInput on invariant violations.
  void validate() const;
};

enum class BasisKind { Lagrange, Berrut };

std::string basis_kind_name(BasisKind kind);
BasisKind basis_kind_from_name(const std::string& name);

/// Encoding points (betas, one per block) and worker evaluation points
/// (alphas, one per worker), both strictly increasing, with every beta
/// inside the closed alpha span.
struct EncodingConfig {
  BasisKind basis_kind = BasisKind::Lagrange;
  std::vector<double> betas;
  std::vector<double> alphas;

  [[nodiscard]] int num_workers() const {
    return static_cast<int>(alphas.size());
  }

  void validate() const;
};

/// Encoded payload assigned to one worker.
struct Share {
  int worker_index = 0;
  double alpha = 0.0;
  Matrix value;
};

/// Entrywise function evaluation returned by a worker.
struct WorkerResult {
  int worker_index = 0;
  Matrix value;
};

/// Scalar map applied entrywise by the workers, with an optional analytic
/// fourth derivative for bound evaluation.
struct TargetFunction {
  std::string name;
  std::function<double(double)> map;
  std::function<double(double)> fourth_derivative;  // may be empty
};

TargetFunction make_identity_function();
TargetFunction make_x_sin_x_function();
TargetFunction make_sigmoid_function();

/// Resolves "identity", "xsinx" or "sigmoid"; throws InvalidInput otherwise.
TargetFunction target_function_by_name(const std::string& name);

/// Chebyshev points of the second kind, cos(i*pi/n) for i = 0..n-1, sorted
/// ascending. Includes +1 but not -1; requires n >= 2.
std::vector<double> chebyshev_nodes_second_kind(int n);

/// Chebyshev points of the first kind, cos((2j+1)*pi/(2k)) for j = 0..k-1,
/// sorted ascending; all strictly inside (-1, 1). Requires k >= 1.
std::vector<double> chebyshev_nodes_first_kind(int k);

/// Lagrange cardinal polynomial for node j evaluated at z.
double lagrange_basis(std::span<const double> betas, int j, double z);

/// Berrut rational basis with alternating weights (-1)^j. Returns the
/// cardinal indicator when z coincides with a node (within 1e-12 of the node
/// span).
double berrut_basis(std::span<const double> betas, int j, double z);

/// Encoded dataset value u(z) = sum_j X_j * Phi_j(z).
Matrix encode(const Dataset& ds, const EncodingConfig& cfg, double z);

/// One share per worker: (i, alpha_i, u(alpha_i)).
std::vector<Share> make_shares(const Dataset& ds, const EncodingConfig& cfg);

/// Entrywise f on the share value; throws NumericalOverflow if any output
/// entry is not finite.
WorkerResult worker_eval(const Share& share, const TargetFunction& f);

/// Natural cubic spline fitted through the survivor results, one scalar
/// channel per matrix entry. Needs at least 4 distinct survivors.
struct SurvivorFit {
  CubicSplineInterpolant interpolant;
  std::vector<double> survivor_alphas;
  int block_rows = 0;
  int block_cols = 0;

  [[nodiscard]] Matrix evaluate(double z) const;
};

SurvivorFit bscc_fit(const std::vector<WorkerResult>& results,
                     const EncodingConfig& cfg);

/// Reconstructed blocks plus a flag marking that some beta fell outside the
/// survivor span and was clamped to its boundary.
struct ReconstructionOutput {
  std::vector<Matrix> blocks;
  bool beta_clamped = false;
};

/// Spline-based reconstruction: fits the survivors and evaluates the
/// interpolant at every beta. With clamp_out_of_span (the default), betas
/// outside the survivor span are evaluated at the nearest span boundary and
/// flagged; otherwise ExtrapolationError is thrown.
ReconstructionOutput bscc_reconstruct(const std::vector<WorkerResult>& results,
                                      const EncodingConfig& cfg,
                                      bool clamp_out_of_span = true);

/// Baseline decoder: Berrut rational interpolation over the survivor points,
/// with exact passthrough when a beta coincides with a survivor alpha.
std::vector<Matrix> bacc_reconstruct(const std::vector<WorkerResult>& results,
                                     const EncodingConfig& cfg);

}  // namespace bscc
