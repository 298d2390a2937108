#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eff {

// Raised for anything the user has to fix; carries the process exit code.
struct UsageError : std::runtime_error {
  UsageError(const std::string& msg, int code = 1) : std::runtime_error(msg), exit_code(code) {}
  int exit_code;
};

struct Dataset {
  std::size_t m = 0, n = 0;
  std::vector<std::string> coords;  // x1..xm, y1..yn as in the header
  std::vector<std::string> ids;
  std::vector<std::vector<double>> netputs;  // inputs negated
  std::size_t dim() const { return m + n; }
};

Dataset load_dataset(const std::string& path, std::size_t m, std::size_t n);

struct HalfspaceFile {
  std::vector<double> normals;  // row-major, d per row
  std::vector<double> rhs;
};

// One constraint per line: a1 ... ad <= b. Blank lines and '#' comments skipped.
HalfspaceFile load_hrep(const std::string& path, std::size_t d);

// Either one line of d values used for every unit, or one line per unit in
// dataset order. Values are separated by commas or whitespace.
std::vector<std::vector<double>> load_directions(const std::string& path, std::size_t d, std::size_t units);

using Cell = std::variant<std::monostate, std::string, double, long long, bool>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);
void write_csv(const Report& r, std::ostream& os);
void write_json(const Report& r, std::ostream& os);

}  // namespace eff
