#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fastsearch {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivergenceError : Error {
  explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

/// Deterministic xoshiro256++ generator. All randomness in the project goes
/// through this class so runs are reproducible across platforms (no
/// implementation-defined std::distribution behavior).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1).
  double next_double();
  /// Uniform double in (0, 1) — safe as input to log().
  double next_open();
  /// Uniform integer in [0, n).
  int next_int(int n);
  double next_gaussian();

  /// Derived independent stream; `stream` tags the purpose (data, gumbel, ...).
  Rng split(std::uint64_t stream) const;

  std::string state_string() const;
  static Rng from_state_string(const std::string& s);

 private:
  Rng() = default;
  std::uint64_t s_[4] = {0, 0, 0, 0};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

namespace threads {
/// Worker-thread cap: min(omp_get_max_threads(), FASTSEARCH_THREADS).
int worker_count();
/// True when parallel kernel variants should be used (worker_count() > 1).
bool parallel_enabled();
/// Test/bench override; pass 0 to restore the environment default.
void set_worker_override(int n);
}  // namespace threads

/// Shortest round-trip formatting for doubles (deterministic CSV/JSON output).
std::string format_double(double v);

/// FNV-1a 64-bit over bytes, hex-encoded; used for content hashes in manifests.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::vector<std::string> split(const std::string& s, char delim);

}  // namespace fastsearch
