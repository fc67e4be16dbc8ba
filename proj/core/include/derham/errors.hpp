#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace derham {

/// Base class of every error raised by the library. `name()` is the stable
/// identifier reported by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// The denominator cz + d of a linear fractional map vanished.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error("PoleError", what) {}
};

class ZeroMatrixError : public Error {
 public:
  explicit ZeroMatrixError(const std::string& what)
      : Error("ZeroMatrixError", what) {}
};

/// Argument outside the domain of a scalar function (p0, entropy, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what)
      : Error("NonConvergence", what) {}
};

/// Normalized matrices of an absolutely continuous system did not match the
/// one-parameter family. Indicates an internal inconsistency.
class FormMismatch : public Error {
 public:
  explicit FormMismatch(const std::string& what) : Error("FormMismatch", what) {}
};

/// Raised by the defect-bound operations when condition (i) holds.
class ConditionHoldsError : public Error {
 public:
  explicit ConditionHoldsError(const std::string& what)
      : Error("ConditionHoldsError", what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error("PreconditionError", what) {}
};

/// One failed admissibility condition.
struct Violation {
  std::string condition;  // "A1", "A2", "A3" or "derived"
  std::string detail;     // the failing inequality, human readable
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error("ValidationError", summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  static std::string summarize(const std::vector<Violation>& violations) {
    std::string out = "invalid system:";
    for (const auto& v : violations) out += " [" + v.condition + ": " + v.detail + "]";
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace derham
