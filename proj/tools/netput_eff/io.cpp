#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eff {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::string s = line;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  throw UsageError("parse error: " + path + ":" + std::to_string(line) + ": " + what);
}

double number(const std::string& tok, const std::string& path, std::size_t line) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto r = std::from_chars(b, e, v);
  if (tok.empty() || r.ec != std::errc() || r.ptr != e) parse_fail(path, line, "not a number: '" + tok + "'");
  if (!std::isfinite(v)) parse_fail(path, line, "value must be finite: '" + tok + "'");
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  return f;
}

bool skippable(const std::string& line) {
  std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

}  // namespace

Dataset load_dataset(const std::string& path, std::size_t m, std::size_t n) {
  if (m + n == 0) throw UsageError("config error: --inputs and --outputs must not both be zero");
  auto f = open(path);
  Dataset ds;
  ds.m = m;
  ds.n = n;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::set<std::string> seen;
  while (std::getline(f, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto cells = split(trim(line), ',');
    if (!header) {
      if (cells.size() != 1 + m + n)
        throw UsageError("config error: " + path + ":" + std::to_string(lineno) + ": header has " +
                         std::to_string(cells.size()) + " columns, expected " + std::to_string(1 + m + n));
      if (cells[0] != "id") parse_fail(path, lineno, "first header column must be 'id'");
      ds.coords.assign(cells.begin() + 1, cells.end());
      header = true;
      continue;
    }
    if (cells.size() != 1 + m + n)
      parse_fail(path, lineno, "expected " + std::to_string(1 + m + n) + " fields, found " +
                                   std::to_string(cells.size()));
    if (cells[0].empty()) parse_fail(path, lineno, "empty id");
    if (!seen.insert(cells[0]).second) parse_fail(path, lineno, "duplicate id '" + cells[0] + "'");
    std::vector<double> z(m + n);
    for (std::size_t k = 0; k < m + n; ++k) {
      double v = number(cells[k + 1], path, lineno);
      if (v < 0.0) parse_fail(path, lineno, "quantities must be nonnegative");
      z[k] = k < m ? -v : v;
    }
    ds.ids.push_back(cells[0]);
    ds.netputs.push_back(std::move(z));
  }
  if (!header) parse_fail(path, lineno, "missing header");
  if (ds.ids.empty()) parse_fail(path, lineno, "no units");
  return ds;
}

HalfspaceFile load_hrep(const std::string& path, std::size_t d) {
  auto f = open(path);
  HalfspaceFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto pos = line.find("<=");
    if (pos == std::string::npos) parse_fail(path, lineno, "expected 'a1 ... ad <= b'");
    auto lhs = tokens(line.substr(0, pos));
    auto rhs = tokens(line.substr(pos + 2));
    if (lhs.size() != d)
      throw UsageError("config error: " + path + ":" + std::to_string(lineno) + ": constraint has " +
                       std::to_string(lhs.size()) + " coefficients, expected " + std::to_string(d));
    if (rhs.size() != 1) parse_fail(path, lineno, "expected a single bound after '<='");
    for (const auto& t : lhs) out.normals.push_back(number(t, path, lineno));
    out.rhs.push_back(number(rhs[0], path, lineno));
  }
  if (out.rhs.empty()) parse_fail(path, lineno, "no constraints");
  return out;
}

std::vector<std::vector<double>> load_directions(const std::string& path, std::size_t d, std::size_t units) {
  auto f = open(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto t = tokens(line);
    if (t.size() != d)
      throw UsageError("config error: " + path + ":" + std::to_string(lineno) + ": direction has " +
                       std::to_string(t.size()) + " components, expected " + std::to_string(d));
    std::vector<double> g;
    for (const auto& s : t) {
      double v = number(s, path, lineno);
      if (v < 0.0) parse_fail(path, lineno, "direction components must be nonnegative");
      g.push_back(v);
    }
    rows.push_back(std::move(g));
  }
  if (rows.size() == 1) return std::vector<std::vector<double>>(units, rows[0]);
  if (rows.size() != units)
    throw UsageError("config error: " + path + ": expected 1 or " + std::to_string(units) + " directions, found " +
                     std::to_string(rows.size()));
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Report& r, std::ostream& os) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, std::string>) os << c;
            else if constexpr (std::is_same_v<T, double>) os << format_number(c);
            else if constexpr (std::is_same_v<T, long long>) os << c;
            else if constexpr (std::is_same_v<T, bool>) os << (c ? "true" : "false");
          },
          row[i]);
    }
    os << '\n';
  }
}

void write_json(const Report& r, std::ostream& os) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      auto& slot = obj[r.columns[i]];
      std::visit(
          [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, std::monostate>) slot = nullptr;
            else if constexpr (std::is_same_v<T, double>) {
              if (std::isnan(c)) slot = nullptr;
              else if (std::isinf(c)) slot = format_number(c);
              else slot = c;
            } else slot = c;
          },
          row[i]);
    }
    out.push_back(std::move(obj));
  }
  os << out.dump(2) << '\n';
}

}  // namespace eff
