#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace facroc {

// Error taxonomy. The CLI maps these onto exit codes:
//   usage_error -> 2, data_error -> 3, infeasible_fairness_error -> 4.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pair slice with no pairs, or only one label value, cannot support ROC
// analysis.
class degenerate_slice_error : public data_error {
 public:
  using data_error::data_error;
};

class infeasible_fairness_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a salt (restart
// index, slice tag, ...). Stable across platforms.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt + 0x51ed2701ULL));
}

// Locale-independent fixed-point formatting; infinities render as "inf".
inline std::string format_fixed(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace facroc
