#ifndef NETPUT_ERROR_HPP
#define NETPUT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace netput {

enum class ErrorCode {
  Domain = 1,
  DimensionMismatch,
  Infeasible,
  Unsupported,
  ConvexityRequired,
  Config,
  SolverFailure,
  NonConvergence,
  Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace netput

#endif
