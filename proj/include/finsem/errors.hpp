#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace finsem {

// Every failure mode carries a stable machine-readable code (tests match on
// it, the CLI maps it to an exit code) plus a human-readable message.
// `Class` separates rejected input (exit 2) from exceeded enumeration
// budgets (exit 3); a budget overrun is an error, never a silent truncation,
// because uniqueness certificates depend on exhaustive search.
class Error : public std::runtime_error {
 public:
  enum class Class { Input, Budget };

  Error(Class cls, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message),
        cls_(cls),
        code_(std::move(code)) {}

  Class errorClass() const noexcept { return cls_; }
  const std::string& code() const noexcept { return code_; }

 private:
  Class cls_;
  std::string code_;
};

[[noreturn]] inline void failInput(const std::string& code,
                                   const std::string& message) {
  throw Error(Error::Class::Input, code, message);
}

[[noreturn]] inline void failBudget(const std::string& code,
                                    const std::string& message) {
  throw Error(Error::Class::Budget, code, message);
}

// Hard caps for exhaustive searches. Exceeding one raises
// SizeBudgetExceeded; results are never quietly clipped.
struct SizeBudget {
  std::size_t objects = 6;
  std::size_t morphisms = 200;
};

}  // namespace finsem
