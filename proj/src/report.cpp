#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "matrad/verify.hpp"

namespace matrad {

namespace {

const char* const kCsvHeader = "check_id,lhs,rhs,stderr_lhs,stderr_rhs,score,pass,wall_time_ms,seed";

bool same_double(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return a == b;
}

// 17 significant digits; JSON has no NaN, so non-finite values become null
std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

double number_or_nan(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw DomainError("bad number in report: '" + s + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

bool same_fields(const CheckResult& a, const CheckResult& b) {
  return a.check_id == b.check_id && same_double(a.lhs, b.lhs) && same_double(a.rhs, b.rhs) &&
         same_double(a.stderr_lhs, b.stderr_lhs) && same_double(a.stderr_rhs, b.stderr_rhs) &&
         same_double(a.score, b.score) && a.pass == b.pass && a.wall_time_ms == b.wall_time_ms &&
         a.seed == b.seed;
}

std::string emit_report(const std::vector<CheckResult>& results, ReportFormat fmt) {
  std::ostringstream os;
  if (fmt == ReportFormat::Csv) {
    os << kCsvHeader << '\n';
    for (const auto& r : results) {
      os << csv_field(r.check_id) << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ','
         << csv_number(r.stderr_lhs) << ',' << csv_number(r.stderr_rhs) << ',' << csv_number(r.score) << ','
         << (r.pass ? "true" : "false") << ',' << r.wall_time_ms << ',' << r.seed << '\n';
    }
    return os.str();
  }
  os << "[";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    os << (i ? ",\n " : "\n ") << "{\"check_id\": " << json_string(r.check_id)
       << ", \"lhs\": " << json_number(r.lhs) << ", \"rhs\": " << json_number(r.rhs)
       << ", \"stderr_lhs\": " << json_number(r.stderr_lhs) << ", \"stderr_rhs\": " << json_number(r.stderr_rhs)
       << ", \"score\": " << json_number(r.score) << ", \"pass\": " << (r.pass ? "true" : "false")
       << ", \"wall_time_ms\": " << r.wall_time_ms << ", \"seed\": " << r.seed << "}";
  }
  os << (results.empty() ? "]\n" : "\n]\n");
  return os.str();
}

std::vector<CheckResult> parse_report(const std::string& text, ReportFormat fmt) {
  std::vector<CheckResult> out;
  if (fmt == ReportFormat::Json) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw DomainError("report must be a JSON array");
    for (const auto& j : doc) {
      CheckResult r;
      r.check_id = j.at("check_id").get<std::string>();
      r.lhs = number_or_nan(j.at("lhs"));
      r.rhs = number_or_nan(j.at("rhs"));
      r.stderr_lhs = number_or_nan(j.at("stderr_lhs"));
      r.stderr_rhs = number_or_nan(j.at("stderr_rhs"));
      r.score = number_or_nan(j.at("score"));
      r.pass = j.at("pass").get<bool>();
      r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      out.push_back(std::move(r));
    }
    return out;
  }
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw DomainError("unexpected CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw DomainError("CSV row with " + std::to_string(f.size()) + " fields");
    CheckResult r;
    r.check_id = f[0];
    r.lhs = parse_double(f[1]);
    r.rhs = parse_double(f[2]);
    r.stderr_lhs = parse_double(f[3]);
    r.stderr_rhs = parse_double(f[4]);
    r.score = parse_double(f[5]);
    if (f[6] != "true" && f[6] != "false") throw DomainError("bad pass field '" + f[6] + "'");
    r.pass = f[6] == "true";
    r.wall_time_ms = std::strtoll(f[7].c_str(), nullptr, 10);
    r.seed = std::strtoull(f[8].c_str(), nullptr, 10);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace matrad
