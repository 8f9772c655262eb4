#include "ncsc/harness/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ncsc/types.hpp"

namespace ncsc::harness {

namespace {

std::string real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

void check_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") != std::string::npos)
    throw Error("CSV text field contains a separator: '" + field + "'");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string& s, int line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0')
    throw Error("CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& s, int line) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno == ERANGE || s[0] == '-')
    throw Error("CSV line " + std::to_string(line) + ": bad integer '" + s + "'");
  return v;
}

bool same_real(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

std::string format_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i)
    os << (i ? "," : "") << kCsvColumns[i];
  os << "\n";
  for (const auto& r : rows) {
    check_field(r.suite);
    check_field(r.instance_id);
    check_field(r.solver);
    os << r.suite << ',' << r.instance_id << ',' << r.solver << ',' << r.seed << ','
       << real(r.kappa) << ',' << r.n << ',' << real(r.epsilon) << ','
       << r.oracle_calls << ',' << real(r.grad_phi_norm) << ','
       << real(r.moreau_norm) << ',' << real(r.wall_ms) << "\n";
  }
  return os.str();
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error("CSV is empty");
  const auto header = split(line);
  if (header.size() != kCsvColumns.size())
    throw Error("CSV header has " + std::to_string(header.size()) + " columns");
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] != kCsvColumns[i])
      throw Error("CSV header column " + std::to_string(i) + " is '" + header[i] +
                  "', expected '" + kCsvColumns[i] + "'");
  std::vector<CsvRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kCsvColumns.size())
      throw Error("CSV line " + std::to_string(lineno) + " has " +
                  std::to_string(f.size()) + " fields");
    CsvRow r;
    r.suite = f[0];
    r.instance_id = f[1];
    r.solver = f[2];
    r.seed = parse_uint(f[3], lineno);
    r.kappa = parse_real(f[4], lineno);
    r.n = static_cast<int>(parse_uint(f[5], lineno));
    r.epsilon = parse_real(f[6], lineno);
    r.oracle_calls = parse_uint(f[7], lineno);
    r.grad_phi_norm = parse_real(f[8], lineno);
    r.moreau_norm = parse_real(f[9], lineno);
    r.wall_ms = parse_real(f[10], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_csv(const std::vector<CsvRow>& rows, const std::filesystem::path& path) {
  const std::string text = format_csv(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write CSV file " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read CSV file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return parse_csv(os.str());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

bool same_row(const CsvRow& a, const CsvRow& b) {
  return a.suite == b.suite && a.instance_id == b.instance_id &&
         a.solver == b.solver && a.seed == b.seed && same_real(a.kappa, b.kappa) &&
         a.n == b.n && same_real(a.epsilon, b.epsilon) &&
         a.oracle_calls == b.oracle_calls &&
         same_real(a.grad_phi_norm, b.grad_phi_norm) &&
         same_real(a.moreau_norm, b.moreau_norm) && same_real(a.wall_ms, b.wall_ms);
}

}  // namespace ncsc::harness
