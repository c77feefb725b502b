#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bscc/pipeline.hpp"

namespace bscc {

enum class Scheme { Bscc, Bacc };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

/// Deterministic 64-bit generator (splitmix64). Used for every sampling
/// stream so results are reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_double();

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// Stateless seed derivation for one trial's sampling streams. The scheme is
/// deliberately not an input: paired schemes must consume identical datasets
/// and straggler draws.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, int s,
                                int trial_index);

/// Full description of one Monte Carlo experiment.
struct ExperimentConfig {
  int n = 100;
  int k = 8;
  int block_rows = 5;
  int block_cols = 5;
  std::vector<int> s_values = {0};
  int trials = 1000;
  std::uint64_t seed = 0;
  BasisKind encoder = BasisKind::Lagrange;
  std::vector<Scheme> schemes = {Scheme::Bscc, Scheme::Bacc};
  std::string function = "xsinx";
  double dist_lo = 0.0;
  double dist_hi = 1.0;

  void validate() const;
};

/// Outcome of a single reconstruction trial. e_rel is NaN when the trial was
/// infeasible (fewer than 4 survivors); e_rel_db is -inf when e_rel is 0.
struct TrialRecord {
  Scheme scheme = Scheme::Bscc;
  BasisKind encoder = BasisKind::Lagrange;
  int n = 0;
  int k = 0;
  int s = 0;
  int trial_index = 0;
  std::uint64_t seed = 0;
  double e_rel = 0.0;
  double e_rel_db = 0.0;
  bool beta_clamped = false;
};

/// Per-(scheme, straggler-count) summary. mean_db converts the linear mean;
/// std_db is the sample standard deviation of the per-trial dB values.
struct Aggregate {
  Scheme scheme = Scheme::Bscc;
  BasisKind encoder = BasisKind::Lagrange;
  int s = 0;
  double mean_e_rel = 0.0;
  double mean_db = 0.0;
  double std_db = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<Aggregate> aggregates;
};

/// K blocks of i.i.d. uniform [dist_lo, dist_hi) entries from the given
/// generator; bitwise deterministic for a fixed seed.
Dataset sample_dataset(const ExperimentConfig& cfg, SplitMix64& rng);

/// Uniformly random survivor subset of size n - s, sorted ascending.
std::vector<int> sample_stragglers(int n, int s, SplitMix64& rng);

/// Squared-Frobenius relative error over all blocks stacked; throws
/// DegenerateReference when the exact blocks are all zero.
double relative_error(const std::vector<Matrix>& exact,
                      const std::vector<Matrix>& approx);

/// Runs one reconstruction trial. Dataset and straggler draws depend only on
/// (cfg.seed, s, trial_index), so the two schemes form matched pairs.
/// ReconstructionInfeasible is recorded in the trial, not thrown.
TrialRecord run_trial(const ExperimentConfig& cfg, Scheme scheme, int s,
                      int trial_index);

/// Cartesian product schemes x s_values x trials, plus per-(scheme, s)
/// aggregates. Output is a pure function of the config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// CSV with header scheme,encoder,N,K,S,trial,seed,e_rel,e_rel_db,beta_clamped
/// and one row per record, numbers at 17 significant digits.
void write_records_csv(const std::vector<TrialRecord>& records,
                       const std::string& path);

/// CSV with header scheme,encoder,S,mean_e_rel,mean_db,std_db,trials.
void write_aggregates_csv(const std::vector<Aggregate>& aggregates,
                          const std::string& path);

/// Parses a flat key=value config ('#' starts a comment). Unknown keys are
/// errors, not warnings.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

/// Locale-independent shortest-roundtrip formatting at 17 significant
/// digits, shared by the CSV writers and the CLI.
std::string format_double(double value);

}  // namespace bscc
