#include "flqft/report.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include <json.hpp>

namespace flqft {

void CheckReport::set_param(const std::string& key, double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  params[key] = os.str();
}

void CheckReport::set_param(const std::string& key, const std::string& v) { params[key] = v; }

namespace {
std::string param_blob(const CheckReport& r) {
  std::string s;
  for (const auto& [k, v] : r.params) s += k + "=" + v + ";";
  return s;
}
}  // namespace

void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.name != b.name) return a.name < b.name;
    return param_blob(a) < param_blob(b);
  });
}

std::string to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json j;
    j["check"] = r.name;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    if (r.observed_is_complex)
      j["observed"] = {r.observed.real(), r.observed.imag()};
    else
      j["observed"] = r.observed.real();
    if (r.expected) j["expected"] = *r.expected;
    if (r.bound) j["bound"] = *r.bound;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["runtime_ms"] = r.runtime_ms;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "check,params,observed_re,observed_im,expected,bound,tolerance,pass,runtime_ms\n";
  for (const CheckReport& r : reports) {
    os << r.name << ",\"" << param_blob(r) << "\"," << r.observed.real() << ","
       << (r.observed_is_complex ? r.observed.imag() : 0.0) << ",";
    if (r.expected) os << *r.expected;
    os << ",";
    if (r.bound) os << *r.bound;
    os << "," << r.tolerance << "," << (r.pass ? "true" : "false") << "," << r.runtime_ms
       << "\n";
  }
  return os.str();
}

Rng::Rng(std::uint64_t seed) : state(seed + 0x9E3779B97F4A7C15ULL) {
  // a couple of mixing rounds so small seeds decorrelate
  for (int i = 0; i < 4; ++i) next_u64();
}

std::uint64_t Rng::next_u64() {
  // splitmix64
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

cplx Rng::complex_in_disk(double radius) {
  while (true) {
    const double re = uniform(-1.0, 1.0), im = uniform(-1.0, 1.0);
    if (re * re + im * im <= 1.0) return radius * cplx(re, im);
  }
}

}  // namespace flqft
