// Compares two JSON reports: integers, strings and layout exactly, floats to a
// relative tolerance (the quadrature sums are not bitwise portable).

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

int mismatches = 0;

void report(const std::string& path, const std::string& what) {
  if (++mismatches <= 20) std::cerr << path << ": " << what << '\n';
}

void compare(const json& a, const json& b, const std::string& path, double rtol) {
  if (a.is_number_float() || b.is_number_float()) {
    if (!a.is_number() || !b.is_number()) return report(path, "type differs");
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) > rtol * std::max({1.0, std::abs(x), std::abs(y)}))
      report(path, std::to_string(x) + " vs " + std::to_string(y));
    return;
  }
  if (a.type() != b.type()) return report(path, "type differs");
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) report(path + "." + it.key(), "missing in golden");
      else compare(*it, b[it.key()], path + "." + it.key(), rtol);
    }
    for (auto it = b.begin(); it != b.end(); ++it)
      if (!a.contains(it.key())) report(path + "." + it.key(), "missing in output");
  } else if (a.is_array()) {
    if (a.size() != b.size()) return report(path, "length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) compare(a[i], b[i], path + "[" + std::to_string(i) + "]", rtol);
  } else if (a != b) {
    report(path, a.dump() + " vs " + b.dump());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: golden_compare OUTPUT GOLDEN [RTOL]\n";
    return 2;
  }
  const double rtol = argc > 3 ? std::stod(argv[3]) : 1e-6;
  std::ifstream fa(argv[1]), fb(argv[2]);
  if (!fa || !fb) {
    std::cerr << "cannot open inputs\n";
    return 2;
  }
  compare(json::parse(fa), json::parse(fb), "$", rtol);
  if (mismatches) std::cerr << mismatches << " mismatch(es)\n";
  return mismatches ? 1 : 0;
}
