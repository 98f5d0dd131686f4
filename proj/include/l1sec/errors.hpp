#pragma once

#include <stdexcept>
#include <string>

namespace l1sec {

// Exit-code taxonomy used by the CLI: 2 infeasible parameters, 3 parse
// error, 4 numerical guard exceeded.
enum class ExitCode : int { ok = 0, infeasible = 2, parse = 3, guard = 4 };

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& what)
      : Error(ExitCode::infeasible, what) {}
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error(ExitCode::parse, "line " + std::to_string(line) + ": " + what),
        line(line) {}
  std::size_t line;
};

struct GuardError : Error {
  explicit GuardError(const std::string& what) : Error(ExitCode::guard, what) {}
};

}  // namespace l1sec
