#include "bscc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <system_error>

#include "bscc/errors.hpp"

namespace bscc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::Bscc ? "BSCC" : "BACC";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "BSCC" || name == "bscc") return Scheme::Bscc;
  if (name == "BACC" || name == "bacc") return Scheme::Bacc;
  throw InvalidInput("unknown scheme '" + name + "'");
}

std::uint64_t SplitMix64::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
  // Modulo bias is < n / 2^64, far below every statistical tolerance here.
  return next_u64() % n;
}

std::uint64_t derive_trial_seed(std::uint64_t base_seed, int s,
                                int trial_index) {
  std::uint64_t h = mix64(base_seed + kGolden);
  h = mix64(h ^ mix64(static_cast<std::uint64_t>(s) + 1));
  h = mix64(h ^ mix64(static_cast<std::uint64_t>(trial_index) +
                      0xBF58476D1CE4E5B9ULL));
  return h;
}

void ExperimentConfig::validate() const {
  if (n < 4) throw InvalidInput("need at least 4 workers");
  if (k < 2) throw InvalidInput("need at least 2 data blocks");
  if (block_rows < 1 || block_cols < 1) {
    throw InvalidInput("block dimensions must be positive");
  }
  if (trials < 1) throw InvalidInput("need at least 1 trial");
  if (s_values.empty()) throw InvalidInput("no straggler counts given");
  for (const int s : s_values) {
    if (s < 0 || s > n - 4) {
      throw InvalidStragglerCount("straggler count " + std::to_string(s) +
                                  " outside [0, " + std::to_string(n - 4) +
                                  "]");
    }
  }
  if (schemes.empty()) throw InvalidInput("no schemes selected");
  if (!(dist_lo < dist_hi)) {
    throw InvalidRange("data distribution needs dist_lo < dist_hi");
  }
  target_function_by_name(function);  // throws on unknown name
}

Dataset sample_dataset(const ExperimentConfig& cfg, SplitMix64& rng) {
  if (!(cfg.dist_lo < cfg.dist_hi)) {
    throw InvalidRange("data distribution needs dist_lo < dist_hi");
  }
  Dataset ds;
  ds.blocks.reserve(static_cast<std::size_t>(cfg.k));
  const double width = cfg.dist_hi - cfg.dist_lo;
  for (int j = 0; j < cfg.k; ++j) {
    Matrix block(cfg.block_rows, cfg.block_cols);
    for (double& v : block.values()) {
      v = cfg.dist_lo + width * rng.next_double();
    }
    ds.blocks.push_back(std::move(block));
  }
  return ds;
}

std::vector<int> sample_stragglers(int n, int s, SplitMix64& rng) {
  if (s < 0 || s > n - 4) {
    throw InvalidStragglerCount("straggler count " + std::to_string(s) +
                                " outside [0, " + std::to_string(n - 4) + "]");
  }
  std::vector<int> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  // Partial Fisher-Yates: the first n - s entries are a uniform subset.
  const int keep = n - s;
  for (int i = 0; i < keep; ++i) {
    const int j =
        i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(indices[static_cast<std::size_t>(i)],
              indices[static_cast<std::size_t>(j)]);
  }
  indices.resize(static_cast<std::size_t>(keep));
  std::sort(indices.begin(), indices.end());
  return indices;
}

double relative_error(const std::vector<Matrix>& exact,
                      const std::vector<Matrix>& approx) {
  if (exact.size() != approx.size()) {
    throw ShapeError("block count mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t b = 0; b < exact.size(); ++b) {
    if (!exact[b].same_shape(approx[b])) {
      throw ShapeError("block shape mismatch");
    }
    const auto e = exact[b].values();
    const auto a = approx[b].values();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double d = e[i] - a[i];
      num += d * d;
      den += e[i] * e[i];
    }
  }
  if (den == 0.0) {
    throw DegenerateReference("relative error against all-zero reference");
  }
  return num / den;
}

namespace {

double to_db(double e_rel) {
  if (std::isnan(e_rel)) return std::numeric_limits<double>::quiet_NaN();
  if (e_rel <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(e_rel);
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, Scheme scheme, int s,
                      int trial_index) {
  const std::uint64_t trial_seed = derive_trial_seed(cfg.seed, s, trial_index);
  SplitMix64 rng(trial_seed);
  const Dataset ds = sample_dataset(cfg, rng);

  TrialRecord record;
  record.scheme = scheme;
  record.encoder = cfg.encoder;
  record.n = cfg.n;
  record.k = cfg.k;
  record.s = s;
  record.trial_index = trial_index;
  record.seed = trial_seed;

  try {
    const std::vector<int> survivors = sample_stragglers(cfg.n, s, rng);

    EncodingConfig enc;
    enc.basis_kind = cfg.encoder;
    enc.alphas = chebyshev_nodes_second_kind(cfg.n);
    enc.betas = chebyshev_nodes_first_kind(cfg.k);

    const TargetFunction f = target_function_by_name(cfg.function);

    std::vector<Matrix> exact;
    exact.reserve(ds.blocks.size());
    for (const Matrix& block : ds.blocks) {
      Matrix y = block;
      for (double& v : y.values()) v = f.map(v);
      exact.push_back(std::move(y));
    }

    std::vector<WorkerResult> results;
    results.reserve(survivors.size());
    for (const int i : survivors) {
      const double alpha = enc.alphas[static_cast<std::size_t>(i)];
      results.push_back(
          worker_eval({i, alpha, encode(ds, enc, alpha)}, f));
    }

    std::vector<Matrix> approx;
    if (scheme == Scheme::Bscc) {
      ReconstructionOutput out = bscc_reconstruct(results, enc);
      approx = std::move(out.blocks);
      record.beta_clamped = out.beta_clamped;
    } else {
      approx = bacc_reconstruct(results, enc);
    }
    record.e_rel = relative_error(exact, approx);
  } catch (const ReconstructionInfeasible&) {
    record.e_rel = std::numeric_limits<double>::quiet_NaN();
  } catch (const InvalidStragglerCount&) {
    // Too many stragglers for a cubic fit: same infeasibility, recorded.
    record.e_rel = std::numeric_limits<double>::quiet_NaN();
  }
  record.e_rel_db = to_db(record.e_rel);
  return record;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.records.reserve(cfg.schemes.size() * cfg.s_values.size() *
                         static_cast<std::size_t>(cfg.trials));

  for (const Scheme scheme : cfg.schemes) {
    for (const int s : cfg.s_values) {
      double sum_e_rel = 0.0;
      std::vector<double> dbs;
      dbs.reserve(static_cast<std::size_t>(cfg.trials));
      int feasible = 0;

      for (int t = 0; t < cfg.trials; ++t) {
        TrialRecord record = run_trial(cfg, scheme, s, t);
        if (!std::isnan(record.e_rel)) {
          sum_e_rel += record.e_rel;
          if (std::isfinite(record.e_rel_db)) dbs.push_back(record.e_rel_db);
          ++feasible;
        }
        result.records.push_back(record);
      }

      Aggregate agg;
      agg.scheme = scheme;
      agg.encoder = cfg.encoder;
      agg.s = s;
      agg.trials = feasible;
      agg.mean_e_rel = feasible > 0
                           ? sum_e_rel / feasible
                           : std::numeric_limits<double>::quiet_NaN();
      agg.mean_db = to_db(agg.mean_e_rel);
      double var = 0.0;
      if (dbs.size() > 1) {
        const double mean =
            std::accumulate(dbs.begin(), dbs.end(), 0.0) / dbs.size();
        for (const double d : dbs) var += (d - mean) * (d - mean);
        var /= static_cast<double>(dbs.size() - 1);
      }
      agg.std_db = std::sqrt(var);
      result.aggregates.push_back(agg);
    }
  }
  return result;
}

std::string format_double(double value) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(
      buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void write_records_csv(const std::vector<TrialRecord>& records,
                       const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "scheme,encoder,N,K,S,trial,seed,e_rel,e_rel_db,beta_clamped\n";
  for (const TrialRecord& r : records) {
    out << scheme_name(r.scheme) << ',' << basis_kind_name(r.encoder) << ','
        << r.n << ',' << r.k << ',' << r.s << ',' << r.trial_index << ','
        << r.seed << ',' << format_double(r.e_rel) << ','
        << format_double(r.e_rel_db) << ',' << (r.beta_clamped ? 1 : 0)
        << '\n';
  }
  finish_write(out, path);
}

void write_aggregates_csv(const std::vector<Aggregate>& aggregates,
                          const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "scheme,encoder,S,mean_e_rel,mean_db,std_db,trials\n";
  for (const Aggregate& a : aggregates) {
    out << scheme_name(a.scheme) << ',' << basis_kind_name(a.encoder) << ','
        << a.s << ',' << format_double(a.mean_e_rel) << ','
        << format_double(a.mean_db) << ',' << format_double(a.std_db) << ','
        << a.trials << '\n';
  }
  finish_write(out, path);
}

namespace {

std::string trim(std::string_view sv) {
  const auto begin = sv.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = sv.find_last_not_of(" \t\r");
  return std::string(sv.substr(begin, end - begin + 1));
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
  T parsed{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const std::from_chars_result res = std::from_chars(first, last, parsed);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw InvalidInput("config key '" + key + "': cannot parse '" + value +
                       "'");
  }
  return parsed;
}

double parse_double_value(const std::string& value, const std::string& key) {
  std::size_t consumed = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &consumed);
  } catch (const std::exception&) {
    throw InvalidInput("config key '" + key + "': cannot parse '" + value +
                       "'");
  }
  if (consumed != value.size()) {
    throw InvalidInput("config key '" + key + "': trailing characters in '" +
                       value + "'");
  }
  return parsed;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("config line without '=': " + trimmed);
    }
    const std::string key = trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = trim(std::string_view(trimmed).substr(eq + 1));

    if (key == "n") {
      cfg.n = parse_number<int>(value, key);
    } else if (key == "k") {
      cfg.k = parse_number<int>(value, key);
    } else if (key == "block_rows") {
      cfg.block_rows = parse_number<int>(value, key);
    } else if (key == "block_cols") {
      cfg.block_cols = parse_number<int>(value, key);
    } else if (key == "s_values") {
      cfg.s_values.clear();
      for (const std::string& item : split_list(value)) {
        cfg.s_values.push_back(parse_number<int>(item, key));
      }
    } else if (key == "trials") {
      cfg.trials = parse_number<int>(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "encoder") {
      cfg.encoder = basis_kind_from_name(value);
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const std::string& item : split_list(value)) {
        cfg.schemes.push_back(scheme_from_name(item));
      }
    } else if (key == "function") {
      cfg.function = value;
    } else if (key == "dist_lo") {
      cfg.dist_lo = parse_double_value(value, key);
    } else if (key == "dist_hi") {
      cfg.dist_hi = parse_double_value(value, key);
    } else {
      throw InvalidInput("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace bscc
