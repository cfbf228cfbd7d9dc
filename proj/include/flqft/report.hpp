#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flqft/complex4.hpp"

namespace flqft {

// machine-readable outcome of a single check; serialized as JSON or CSV
struct CheckReport {
  std::string name;
  std::map<std::string, std::string> params;  // flat parameter record
  cplx observed = 0.0;
  bool observed_is_complex = false;
  std::optional<double> expected;   // target value, when the check has one
  std::optional<double> bound;      // upper bound, for bound-style checks
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;

  void set_param(const std::string& key, double v);
  void set_param(const std::string& key, const std::string& v);
};

// deterministic ordering: by name, then by the flattened parameter record
void sort_reports(std::vector<CheckReport>& reports);

// JSON array, stable key order, complex values as [re, im], newline-terminated
std::string to_json(const std::vector<CheckReport>& reports);

std::string to_csv(const std::vector<CheckReport>& reports);

// deterministic xorshift-based sampler; identical across platforms
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);
  cplx complex_in_disk(double radius);
};

}  // namespace flqft
