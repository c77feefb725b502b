#include "bscc/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bscc/errors.hpp"

namespace bscc {

BandedMatrix::BandedMatrix(int order, int lower_bw, int upper_bw)
    : order_(order), lower_bw_(lower_bw), upper_bw_(upper_bw) {
  if (order <= 0 || lower_bw < 0 || upper_bw < 0) {
    throw InvalidInput("banded matrix needs positive order and nonnegative "
                       "bandwidths");
  }
  data_.assign(static_cast<std::size_t>(lower_bw + upper_bw + 1) *
                   static_cast<std::size_t>(order),
               0.0);
}

bool BandedMatrix::in_band(int i, int j) const {
  return i >= 0 && j >= 0 && i < order_ && j < order_ &&
         j - i >= -lower_bw_ && j - i <= upper_bw_;
}

double BandedMatrix::at(int i, int j) const {
  if (!in_band(i, j)) return 0.0;
  const int r = j - i + lower_bw_;
  return data_[static_cast<std::size_t>(r) * order_ + j];
}

void BandedMatrix::set(int i, int j, double value) {
  if (!in_band(i, j)) {
    throw IndexError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside band of order-" + std::to_string(order_) +
                     " matrix");
  }
  const int r = j - i + lower_bw_;
  data_[static_cast<std::size_t>(r) * order_ + j] = value;
}

double BandedMatrix::max_row_norm() const {
  double best = 0.0;
  for (int i = 0; i < order_; ++i) {
    double s = 0.0;
    const int jlo = std::max(0, i - lower_bw_);
    const int jhi = std::min(order_ - 1, i + upper_bw_);
    for (int j = jlo; j <= jhi; ++j) s += std::abs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

std::vector<std::vector<double>> BandedMatrix::to_dense() const {
  std::vector<std::vector<double>> dense(
      static_cast<std::size_t>(order_),
      std::vector<double>(static_cast<std::size_t>(order_), 0.0));
  for (int i = 0; i < order_; ++i) {
    const int jlo = std::max(0, i - lower_bw_);
    const int jhi = std::min(order_ - 1, i + upper_bw_);
    for (int j = jlo; j <= jhi; ++j) dense[i][j] = at(i, j);
  }
  return dense;
}

BandwidthProfile bandwidth_profile(const BandedMatrix& m) {
  BandwidthProfile p;
  for (int i = 0; i < m.order(); ++i) {
    int row_nonzeros = 0;
    const int jlo = std::max(0, i - m.lower_bandwidth());
    const int jhi = std::min(m.order() - 1, i + m.upper_bandwidth());
    for (int j = jlo; j <= jhi; ++j) {
      if (m.at(i, j) != 0.0) {
        ++row_nonzeros;
        p.lower_bw = std::max(p.lower_bw, i - j);
        p.upper_bw = std::max(p.upper_bw, j - i);
      }
    }
    p.max_row_nonzeros = std::max(p.max_row_nonzeros, row_nonzeros);
  }
  return p;
}

BandedLU::BandedLU(int order, int lower_bw, int upper_bw)
    : order_(order), lower_bw_(lower_bw), upper_bw_(upper_bw) {
  data_.assign(static_cast<std::size_t>(lower_bw + upper_bw + 1) *
                   static_cast<std::size_t>(order),
               0.0);
  pivots_.assign(static_cast<std::size_t>(order), 0);
}

// Column-major band workspace: each column's band entries are contiguous, so
// pivot searches and eliminations stream through memory.
double& BandedLU::fat(int i, int j) {
  return data_[static_cast<std::size_t>(j) * (lower_bw_ + upper_bw_ + 1) +
               (j - i + lower_bw_)];
}

double BandedLU::fat(int i, int j) const {
  return data_[static_cast<std::size_t>(j) * (lower_bw_ + upper_bw_ + 1) +
               (j - i + lower_bw_)];
}

BandedLU banded_lu_factor(const BandedMatrix& m) {
  const int n = m.order();
  const int kl = m.lower_bandwidth();
  const int ku_wide = m.lower_bandwidth() + m.upper_bandwidth();
  BandedLU lu(n, kl, ku_wide);

  for (int i = 0; i < n; ++i) {
    const int jlo = std::max(0, i - kl);
    const int jhi = std::min(n - 1, i + m.upper_bandwidth());
    for (int j = jlo; j <= jhi; ++j) lu.fat(i, j) = m.at(i, j);
  }

  const double pivot_tol = 1e-13 * m.max_row_norm();

  for (int k = 0; k < n; ++k) {
    const int last_row = std::min(n - 1, k + kl);
    const int last_col = std::min(n - 1, k + ku_wide);

    int piv = k;
    double piv_mag = std::abs(lu.fat(k, k));
    for (int i = k + 1; i <= last_row; ++i) {
      const double mag = std::abs(lu.fat(i, k));
      if (mag > piv_mag) {
        piv_mag = mag;
        piv = i;
      }
    }
    if (!(piv_mag > pivot_tol)) {
      throw SingularMatrix("pivot " + std::to_string(piv_mag) +
                           " below tolerance at column " + std::to_string(k));
    }
    lu.pivots_[static_cast<std::size_t>(k)] = piv;
    if (piv != k) {
      for (int j = k; j <= last_col; ++j) {
        std::swap(lu.fat(k, j), lu.fat(piv, j));
      }
    }

    const double diag = lu.fat(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double mult = lu.fat(i, k) / diag;
      lu.fat(i, k) = mult;
      if (mult == 0.0) continue;
      for (int j = k + 1; j <= last_col; ++j) {
        lu.fat(i, j) -= mult * lu.fat(k, j);
      }
    }
  }
  return lu;
}

void BandedLU::solve_in_place(std::span<double> x) const {
  const int n = order_;
  for (int k = 0; k < n; ++k) {
    const int piv = pivots_[static_cast<std::size_t>(k)];
    if (piv != k) std::swap(x[k], x[piv]);
    const int last_row = std::min(n - 1, k + lower_bw_);
    for (int i = k + 1; i <= last_row; ++i) {
      x[i] -= fat(i, k) * x[k];
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    const int last_col = std::min(n - 1, k + upper_bw_);
    double acc = x[k];
    for (int j = k + 1; j <= last_col; ++j) {
      acc -= fat(k, j) * x[j];
    }
    x[k] = acc / fat(k, k);
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  if (static_cast<int>(rhs.size()) != order_) {
    throw ShapeError("right-hand side length " + std::to_string(rhs.size()) +
                     " != order " + std::to_string(order_));
  }
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

std::vector<std::vector<double>> BandedLU::solve(
    const std::vector<std::vector<double>>& rhs_columns) const {
  std::vector<std::vector<double>> out;
  out.reserve(rhs_columns.size());
  for (const auto& rhs : rhs_columns) out.push_back(solve(rhs));
  return out;
}

}  // namespace bscc
