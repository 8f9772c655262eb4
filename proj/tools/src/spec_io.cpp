#include "ncsc/harness/spec_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ncsc::harness {

namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError("spec key '" + key + "': not a number: '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError("spec key '" + key + "': not an integer: '" + text + "'");
  return static_cast<int>(v);
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::string format_spec(const instances::HardInstanceSpec& spec) {
  std::ostringstream os;
  os << "mode = " << instances::to_string(spec.mode) << "\n";
  os << "L = " << number(spec.L) << "\n";
  os << "mu = " << number(spec.mu) << "\n";
  os << "Delta = " << number(spec.Delta) << "\n";
  os << "epsilon = " << number(spec.epsilon) << "\n";
  os << "n = " << spec.n << "\n";
  if (spec.d_overridden) os << "d_override = " << spec.d << "\n";
  os << "# derived\n";
  os << "lambda1 = " << number(spec.lambda1) << "\n";
  os << "lambda2 = " << number(spec.lambda2) << "\n";
  os << "alpha = " << number(spec.alpha) << "\n";
  os << "eta = " << number(spec.eta) << "\n";
  os << "d = " << spec.d << "\n";
  return os.str();
}

instances::HardInstanceSpec parse_spec(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("spec line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("spec line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw ConfigError("spec key '" + key + "' given twice");
  }
  static const char* known[] = {"mode",    "L",      "mu",      "Delta", "epsilon",
                                "n",       "d_override", "lambda1", "lambda2",
                                "alpha",   "eta",    "d"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown spec key '" + key + "'");
  }
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("spec is missing key '" + key + "'");
    return it->second;
  };

  instances::Mode mode;
  try {
    mode = instances::parse_mode(need("mode"));
  } catch (const InvalidSpecError& e) {
    throw ConfigError(e.what());
  }
  const double L = to_double("L", need("L"));
  const double mu = to_double("mu", need("mu"));
  const double Delta = to_double("Delta", need("Delta"));
  const double epsilon = to_double("epsilon", need("epsilon"));
  const int n = kv.count("n") ? to_int("n", kv["n"]) : 1;
  std::optional<int> d_override;
  if (kv.count("d_override")) d_override = to_int("d_override", kv["d_override"]);

  instances::HardInstanceSpec spec;
  try {
    spec = instances::derive_spec(mode, L, mu, Delta, epsilon, n, d_override);
  } catch (const InvalidSpecError& e) {
    throw ConfigError(e.what());
  }
  const std::pair<const char*, double> derived[] = {{"lambda1", spec.lambda1},
                                                    {"lambda2", spec.lambda2},
                                                    {"alpha", spec.alpha},
                                                    {"eta", spec.eta},
                                                    {"d", double(spec.d)}};
  for (const auto& [key, expected] : derived) {
    auto it = kv.find(key);
    if (it != kv.end() && !close(to_double(key, it->second), expected))
      throw ConfigError(std::string("spec key '") + key + "' = " + it->second +
                        " disagrees with the derived value " + number(expected));
  }
  return spec;
}

void write_spec(const instances::HardInstanceSpec& spec,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write spec file " + path.string());
  out << format_spec(spec);
  if (!out) throw Error("write failed for " + path.string());
}

instances::HardInstanceSpec read_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance spec " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return parse_spec(os.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace ncsc::harness
