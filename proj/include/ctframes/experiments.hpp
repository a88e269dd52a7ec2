#ifndef CTFRAMES_EXPERIMENTS_HPP
#define CTFRAMES_EXPERIMENTS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctf {

/// One verified quantity: |computed - expected| <= tolerance must hold, or,
/// for residual-style checks, computed (a max residual) <= tolerance with
/// expected = 0.
struct Check {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(const std::string& name, double computed, double expected, double tolerance);

struct Report {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double wall_time_ms = 0.0;

  bool pass() const;
  /// Deterministic JSON (fixed key order, 17-significant-digit floats); the
  /// wall_time_ms field is the only part that varies between identical runs.
  std::string to_json() const;
  std::string to_csv() const;
};

struct RunOptions {
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::string out_path;  // overrides the config output path when nonempty
  std::string format;    // "json" or "csv"; overrides the config when nonempty
  bool quiet = false;
};

/// Config rejected (unknown key, bad value, missing seed, parse failure).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Output could not be written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& experiment_names();

/// Parses the JSON config, runs the named experiment, writes the report to
/// the configured output path. Deterministic given the seed.
Report run_experiment(const std::string& config_json, const RunOptions& options);

/// Parameter schema and the claims the experiment verifies.
std::string describe_experiment(const std::string& name);

// Per-criterion check suites of the built-in verification battery. Each
// returns the checks it ran; full_suite_checks concatenates all of them.
std::vector<Check> checks_tensor_consistency(std::uint64_t seed);        // bounds multiply
std::vector<Check> checks_frame_operator_factorization(std::uint64_t seed);
std::vector<Check> checks_bound_constants(std::uint64_t seed);
std::vector<Check> checks_dual_classification(std::uint64_t seed);
std::vector<Check> checks_nonsimple_dual();
std::vector<Check> checks_multiplier_bounds(std::uint64_t seed);
std::vector<Check> checks_adjoint_identity(std::uint64_t seed);
std::vector<Check> checks_partial_trace(std::uint64_t seed);
std::vector<Check> checks_gabor_tightness(std::uint64_t seed);
std::vector<Check> checks_trace_formula(std::uint64_t seed);
std::vector<Check> checks_density_construction(std::uint64_t seed);
std::vector<Check> checks_wavelet_tightness();

std::vector<Check> full_suite_checks(std::uint64_t seed);

}  // namespace ctf

#endif
