#include "bscc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bscc/errors.hpp"

namespace bscc {

namespace {

void check_distinct_sorted(std::span<const double> points, const char* what) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) {
      throw InvalidNodes(std::string(what) + " must be strictly increasing");
    }
  }
}

std::vector<WorkerResult> sorted_survivors(
    const std::vector<WorkerResult>& results, const EncodingConfig& cfg) {
  std::vector<WorkerResult> survivors = results;
  for (const WorkerResult& r : survivors) {
    if (r.worker_index < 0 || r.worker_index >= cfg.num_workers()) {
      throw IndexError("worker index " + std::to_string(r.worker_index) +
                       " out of range");
    }
  }
  std::sort(survivors.begin(), survivors.end(),
            [](const WorkerResult& a, const WorkerResult& b) {
              return a.worker_index < b.worker_index;
            });
  for (std::size_t i = 0; i + 1 < survivors.size(); ++i) {
    if (survivors[i].worker_index == survivors[i + 1].worker_index) {
      throw InvalidInput("duplicate worker result for index " +
                         std::to_string(survivors[i].worker_index));
    }
  }
  return survivors;
}

}  // namespace

Matrix::Matrix(int rows, int cols, double fill) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw ShapeError("matrix dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

void Dataset::validate() const {
  if (blocks.size() < 2) {
    throw InvalidInput("dataset needs at least 2 blocks, got " +
                       std::to_string(blocks.size()));
  }
  for (const Matrix& b : blocks) {
    if (!b.same_shape(blocks.front())) {
      throw ShapeError("dataset blocks differ in shape");
    }
  }
}

std::string basis_kind_name(BasisKind kind) {
  return kind == BasisKind::Lagrange ? "lagrange" : "berrut";
}

BasisKind basis_kind_from_name(const std::string& name) {
  if (name == "lagrange") return BasisKind::Lagrange;
  if (name == "berrut") return BasisKind::Berrut;
  throw InvalidInput("unknown encoder '" + name +
                     "' (expected lagrange or berrut)");
}

void EncodingConfig::validate() const {
  if (betas.size() < 2) throw InvalidInput("need at least 2 encoding points");
  if (alphas.size() < 2) {
    throw InvalidInput("need at least 2 evaluation points");
  }
  check_distinct_sorted(betas, "encoding points");
  check_distinct_sorted(alphas, "evaluation points");
  if (betas.front() < alphas.front() || betas.back() > alphas.back()) {
    throw InvalidInput("encoding points must lie inside the closed "
                       "evaluation span");
  }
}

TargetFunction make_identity_function() {
  return {"identity", [](double x) { return x; }, [](double) { return 0.0; }};
}

TargetFunction make_x_sin_x_function() {
  return {"xsinx", [](double x) { return x * std::sin(x); },
          [](double x) { return x * std::sin(x) - 4.0 * std::cos(x); }};
}

TargetFunction make_sigmoid_function() {
  auto sigma = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  return {"sigmoid", sigma, [sigma](double x) {
            const double s = sigma(x);
            const double sp = s * (1.0 - s);
            return sp * (1.0 - 14.0 * s + 36.0 * s * s - 24.0 * s * s * s);
          }};
}

TargetFunction target_function_by_name(const std::string& name) {
  if (name == "identity") return make_identity_function();
  if (name == "xsinx") return make_x_sin_x_function();
  if (name == "sigmoid") return make_sigmoid_function();
  throw InvalidInput("unknown function '" + name +
                     "' (expected identity, xsinx or sigmoid)");
}

std::vector<double> chebyshev_nodes_second_kind(int n) {
  if (n < 2) throw InvalidCount("need at least 2 evaluation points");
  std::vector<double> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] =
        std::cos(static_cast<double>(i) * std::numbers::pi / n);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<double> chebyshev_nodes_first_kind(int k) {
  if (k < 1) throw InvalidCount("need at least 1 encoding point");
  std::vector<double> nodes(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    nodes[static_cast<std::size_t>(j)] =
        std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * k));
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

namespace {

void check_distinct(std::span<const double> points) {
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidNodes("duplicate encoding points");
  }
}

double node_snap_tolerance(std::span<const double> points) {
  const auto [min_it, max_it] =
      std::minmax_element(points.begin(), points.end());
  const double span = *max_it - *min_it;
  return 1e-12 * (span > 0.0 ? span : 1.0);
}

}  // namespace

double lagrange_basis(std::span<const double> betas, int j, double z) {
  if (j < 0 || j >= static_cast<int>(betas.size())) {
    throw IndexError("basis index out of range");
  }
  check_distinct(betas);
  double prod = 1.0;
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (static_cast<int>(k) == j) continue;
    prod *= (z - betas[k]) / (betas[static_cast<std::size_t>(j)] - betas[k]);
  }
  return prod;
}

double berrut_basis(std::span<const double> betas, int j, double z) {
  if (j < 0 || j >= static_cast<int>(betas.size())) {
    throw IndexError("basis index out of range");
  }
  check_distinct(betas);
  const double snap = node_snap_tolerance(betas);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (std::abs(z - betas[i]) <= snap) {
      return static_cast<int>(i) == j ? 1.0 : 0.0;
    }
  }
  double num = 0.0;
  double den = 0.0;
  double sign = 1.0;
  for (std::size_t k = 0; k < betas.size(); ++k) {
    const double term = sign / (z - betas[k]);
    den += term;
    if (static_cast<int>(k) == j) num = term;
    sign = -sign;
  }
  return num / den;
}

Matrix encode(const Dataset& ds, const EncodingConfig& cfg, double z) {
  ds.validate();
  cfg.validate();
  if (ds.num_blocks() != static_cast<int>(cfg.betas.size())) {
    throw ShapeError("dataset block count " + std::to_string(ds.num_blocks()) +
                     " != encoding point count " +
                     std::to_string(cfg.betas.size()));
  }
  const Matrix& first = ds.blocks.front();
  Matrix out(first.rows(), first.cols(), 0.0);
  for (int j = 0; j < ds.num_blocks(); ++j) {
    const double phi = cfg.basis_kind == BasisKind::Lagrange
                           ? lagrange_basis(cfg.betas, j, z)
                           : berrut_basis(cfg.betas, j, z);
    if (phi == 0.0) continue;
    const auto src = ds.blocks[static_cast<std::size_t>(j)].values();
    auto dst = out.values();
    for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += phi * src[e];
  }
  return out;
}

std::vector<Share> make_shares(const Dataset& ds, const EncodingConfig& cfg) {
  std::vector<Share> shares;
  shares.reserve(cfg.alphas.size());
  for (int i = 0; i < cfg.num_workers(); ++i) {
    const double alpha = cfg.alphas[static_cast<std::size_t>(i)];
    shares.push_back({i, alpha, encode(ds, cfg, alpha)});
  }
  return shares;
}

WorkerResult worker_eval(const Share& share, const TargetFunction& f) {
  WorkerResult result;
  result.worker_index = share.worker_index;
  result.value = share.value;
  for (double& v : result.value.values()) {
    v = f.map(v);
    if (!std::isfinite(v)) {
      throw NumericalOverflow("function '" + f.name +
                              "' produced a non-finite value");
    }
  }
  return result;
}

SurvivorFit bscc_fit(const std::vector<WorkerResult>& results,
                     const EncodingConfig& cfg) {
  cfg.validate();
  const std::vector<WorkerResult> survivors = sorted_survivors(results, cfg);
  if (survivors.size() < 4) {
    throw ReconstructionInfeasible(
        "spline reconstruction needs at least 4 survivor results, got " +
        std::to_string(survivors.size()));
  }

  SurvivorFit fit;
  fit.block_rows = survivors.front().value.rows();
  fit.block_cols = survivors.front().value.cols();
  fit.survivor_alphas.reserve(survivors.size());
  for (const WorkerResult& r : survivors) {
    if (r.value.rows() != fit.block_rows || r.value.cols() != fit.block_cols) {
      throw ShapeError("worker results differ in shape");
    }
    fit.survivor_alphas.push_back(
        cfg.alphas[static_cast<std::size_t>(r.worker_index)]);
  }

  // One scalar channel per matrix entry; the system is factored once.
  const std::size_t channels =
      static_cast<std::size_t>(fit.block_rows) * fit.block_cols;
  std::vector<std::vector<double>> samples(
      channels, std::vector<double>(survivors.size()));
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const auto values = survivors[i].value.values();
    for (std::size_t ch = 0; ch < channels; ++ch) {
      samples[ch][i] = values[ch];
    }
  }
  fit.interpolant = fit_natural_cubic(fit.survivor_alphas, samples);
  return fit;
}

Matrix SurvivorFit::evaluate(double z) const {
  const std::vector<double> channel_values = interpolant.evaluate(z);
  Matrix out(block_rows, block_cols);
  auto dst = out.values();
  std::copy(channel_values.begin(), channel_values.end(), dst.begin());
  return out;
}

ReconstructionOutput bscc_reconstruct(const std::vector<WorkerResult>& results,
                                      const EncodingConfig& cfg,
                                      bool clamp_out_of_span) {
  const SurvivorFit fit = bscc_fit(results, cfg);
  const double lo = fit.survivor_alphas.front();
  const double hi = fit.survivor_alphas.back();

  ReconstructionOutput out;
  out.blocks.reserve(cfg.betas.size());
  for (const double beta : cfg.betas) {
    double z = beta;
    if (z < lo || z > hi) {
      if (!clamp_out_of_span) {
        throw ExtrapolationError("encoding point " + std::to_string(beta) +
                                 " outside survivor span [" +
                                 std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
      }
      z = std::clamp(z, lo, hi);
      out.beta_clamped = true;
    }
    out.blocks.push_back(fit.evaluate(z));
  }
  return out;
}

std::vector<Matrix> bacc_reconstruct(const std::vector<WorkerResult>& results,
                                     const EncodingConfig& cfg) {
  cfg.validate();
  const std::vector<WorkerResult> survivors = sorted_survivors(results, cfg);
  if (survivors.empty()) {
    throw ReconstructionInfeasible("no survivor results to decode");
  }
  const int m = static_cast<int>(survivors.size());
  std::vector<double> alphas(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    alphas[static_cast<std::size_t>(i)] =
        cfg.alphas[static_cast<std::size_t>(survivors[i].worker_index)];
  }

  const Matrix& first = survivors.front().value;
  const double snap = node_snap_tolerance(alphas);
  std::vector<double> phi(static_cast<std::size_t>(m));
  std::vector<Matrix> blocks;
  blocks.reserve(cfg.betas.size());
  for (const double beta : cfg.betas) {
    if (m == 1) {
      blocks.push_back(first);  // degenerate rational: constant
      continue;
    }
    int hit = -1;
    for (int i = 0; i < m; ++i) {
      if (std::abs(beta - alphas[static_cast<std::size_t>(i)]) <= snap) {
        hit = i;
        break;
      }
    }
    if (hit >= 0) {
      blocks.push_back(survivors[static_cast<std::size_t>(hit)].value);
      continue;
    }
    double den = 0.0;
    double sign = 1.0;
    for (int i = 0; i < m; ++i) {
      phi[static_cast<std::size_t>(i)] =
          sign / (beta - alphas[static_cast<std::size_t>(i)]);
      den += phi[static_cast<std::size_t>(i)];
      sign = -sign;
    }
    Matrix out(first.rows(), first.cols(), 0.0);
    auto dst = out.values();
    for (int i = 0; i < m; ++i) {
      const double w = phi[static_cast<std::size_t>(i)] / den;
      const auto src = survivors[static_cast<std::size_t>(i)].value.values();
      for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += w * src[e];
    }
    blocks.push_back(std::move(out));
  }
  return blocks;
}

}  // namespace bscc
