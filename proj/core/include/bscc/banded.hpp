#pragma once

#include <span>
#include <vector>

namespace bscc {

/// Square matrix stored by diagonals: storage row r holds the diagonal with
/// offset r - lower_bandwidth (row `lower_bandwidth` is the main diagonal),
/// indexed by column. Entries outside the band are identically zero.
class BandedMatrix {
 public:
  BandedMatrix(int order, int lower_bw, int upper_bw);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] int lower_bandwidth() const { return lower_bw_; }
  [[nodiscard]] int upper_bandwidth() const { return upper_bw_; }

  /// Entry (i, j); zero outside the band.
  [[nodiscard]] double at(int i, int j) const;

  /// Writes entry (i, j); throws IndexError outside the band.
  void set(int i, int j, double value);

  [[nodiscard]] bool in_band(int i, int j) const;

  /// Largest row sum of absolute values (infinity norm).
  [[nodiscard]] double max_row_norm() const;

  /// Dense order x order copy, for oracles and diagnostics.
  [[nodiscard]] std::vector<std::vector<double>> to_dense() const;

 private:
  int order_;
  int lower_bw_;
  int upper_bw_;
  std::vector<double> data_;  // (lower_bw + upper_bw + 1) rows, column-indexed
};

struct BandwidthProfile {
  int max_row_nonzeros = 0;
  int lower_bw = 0;
  int upper_bw = 0;
};

/// Exact nonzero structure of the stored band: per-row nonzero maximum and
/// the outermost nonzero diagonals on each side.
BandwidthProfile bandwidth_profile(const BandedMatrix& m);

/// LU factors of a banded matrix with partial pivoting. Row swaps widen the
/// upper band to lower_bw + upper_bw; the lower band holds the multipliers.
/// A factored matrix is immutable and may be shared across threads for
/// concurrent solves.
class BandedLU {
 public:
  [[nodiscard]] int order() const { return order_; }

  /// Solves A x = rhs for one right-hand side (ShapeError on length
  /// mismatch).
  [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;

  /// Solves one system per right-hand-side column, reusing the factors.
  [[nodiscard]] std::vector<std::vector<double>> solve(
      const std::vector<std::vector<double>>& rhs_columns) const;

 private:
  friend BandedLU banded_lu_factor(const BandedMatrix& m);

  BandedLU(int order, int lower_bw, int upper_bw);

  [[nodiscard]] double& fat(int i, int j);
  [[nodiscard]] double fat(int i, int j) const;
  void solve_in_place(std::span<double> x) const;

  int order_;
  int lower_bw_;
  int upper_bw_;  // widened: original lower_bw + upper_bw
  std::vector<double> data_;
  std::vector<int> pivots_;
};

/// Banded LU factorization with partial pivoting; O(order) work for fixed
/// bandwidths. Throws SingularMatrix when a pivot falls below
/// 1e-13 * max_row_norm of the input.
BandedLU banded_lu_factor(const BandedMatrix& m);

}  // namespace bscc
