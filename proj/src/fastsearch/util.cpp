#include "fastsearch/util.hpp"

#include <omp.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fastsearch {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_open() {
  double u;
  do {
    u = next_double();
  } while (u <= 0.0);
  return u;
}

int Rng::next_int(int n) {
  // Rejection sampling keeps the distribution exact and platform-independent.
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(x % bound);
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_open();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Rng Rng::split(std::uint64_t stream) const {
  std::uint64_t x = s_[0] ^ rotl(s_[2], 13) ^ (stream * 0x9e3779b97f4a7c15ULL + 0x6d);
  Rng out;
  for (auto& s : out.s_) s = splitmix64(x);
  return out;
}

std::string Rng::state_string() const {
  std::ostringstream os;
  os << s_[0] << ":" << s_[1] << ":" << s_[2] << ":" << s_[3] << ":" << (has_spare_ ? 1 : 0);
  if (has_spare_) os << ":" << format_double(spare_);
  return os.str();
}

Rng Rng::from_state_string(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() < 5) throw Error("bad rng state string: " + s);
  Rng r;
  for (int i = 0; i < 4; ++i) r.s_[i] = std::stoull(parts[i]);
  r.has_spare_ = parts[4] == "1";
  if (r.has_spare_) r.spare_ = std::stod(parts[5]);
  return r;
}

namespace threads {

namespace {
std::atomic<int> g_override{0};

int env_limit() {
  static int cached = [] {
    const char* v = std::getenv("FASTSEARCH_THREADS");
    if (!v) return 0;
    int n = std::atoi(v);
    return n > 0 ? n : 0;
  }();
  return cached;
}
}  // namespace

int worker_count() {
  int n = g_override.load();
  if (n <= 0) {
    n = omp_get_max_threads();
    if (int lim = env_limit(); lim > 0 && lim < n) n = lim;
  }
  return n < 1 ? 1 : n;
}

bool parallel_enabled() { return worker_count() > 1; }

void set_worker_override(int n) { g_override.store(n); }

}  // namespace threads

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace fastsearch
