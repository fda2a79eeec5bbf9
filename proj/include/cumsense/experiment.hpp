#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cumsense/signal_gen.hpp"

namespace cumsense {

struct RatioSweep {
  double lo = 0.5;
  double hi = 1.0;
  double step = 0.1;

  std::vector<double> points() const;  // lo, lo+step, ..., up to hi inclusive
};

// Complete description of one run: experiment kind, models, sweep ranges and
// seeding. Serializes losslessly to JSON; the hash of the canonical form is
// embedded in every output file.
struct ExperimentConfig {
  std::string kind = "c3cs-mse";
  int n = 20;
  int m = 0;  // explicit branch count; 0 defers to the ratio sweep
  RatioSweep ratios;
  std::vector<int> k_values{10000};
  int q = 4;
  int trials = 50;
  std::uint64_t seed = 1;
  std::optional<double> snr_db;  // empty = noise-free
  std::string out_dir = "out";
  std::string signal = "ma";  // "ma" or "harmonic"
  MaModel ma{{1.0, 0.9, 0.385, -0.771}, MaModel::Driver::centered_exponential};
  HarmonicModel harmonic{{0.1, 0.2}, {1.0, 1.0}};
  ColoredNoiseModel noise{{1.0, -2.33, 0.75, 0.5, -1.3, -1.4}, {1.0}};
  int music_harmonics = 2;
  int music_order = 12;
  int music_grid = 2048;
  int ruler_exact_limit = 60;
};

// Baseline configuration for each experiment kind (block length, sweep
// ranges, signal and noise models the experiments were designed around).
ExperimentConfig default_config(const std::string& kind);

nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
std::string config_hash(const ExperimentConfig& c);  // 16 hex digits

// One point of a Monte Carlo error sweep: mean error over trials at a
// (compression ratio, block count) pair, its standard error, and the fraction
// of trials whose linear system passed the rank check.
struct SweepCell {
  double ratio = 0.0;
  int k = 0;
  double mean_error = 0.0;
  double stderr_error = 0.0;
  double rank_ok_fraction = 0.0;
};

// Monte Carlo sweeps behind the c3cs-mse and ccss-nmse experiments. Cells are
// ordered by k (as configured), then by increasing branch count. Deterministic
// for a fixed config, independent of worker thread count.
std::vector<SweepCell> c3cs_sweep(const ExperimentConfig& c);
std::vector<SweepCell> ccss_sweep(const ExperimentConfig& c);

// Executes the configured experiment, writing CSV output plus manifest.json
// under out_dir. Returns a process exit status.
int run(const ExperimentConfig& c);

// Deterministic trial loop: body(t) runs for t in [0, trials), possibly on
// worker threads; callers must write results only to slot t.
void run_trials(int trials, const std::function<void(int)>& body);

}  // namespace cumsense
