#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linvol {

/// Base class of every error raised by the library. `code()` is a stable
/// machine-readable name used in structured CLI error output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define LINVOL_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  };

// genperm
LINVOL_DEFINE_ERROR(LabelCountError)
LINVOL_DEFINE_ERROR(EmptyRowError)
LINVOL_DEFINE_ERROR(ParameterMismatch)
LINVOL_DEFINE_ERROR(ParseError)

// involution
LINVOL_DEFINE_ERROR(SumMismatch)
LINVOL_DEFINE_ERROR(PositivityError)
LINVOL_DEFINE_ERROR(SingularPoint)
LINVOL_DEFINE_ERROR(NotFiniteReturn)
LINVOL_DEFINE_ERROR(DegeneratePiece)
LINVOL_DEFINE_ERROR(BackendError)

// rauzy
LINVOL_DEFINE_ERROR(MoveUndefined)
LINVOL_DEFINE_ERROR(RunCapExceeded)
LINVOL_DEFINE_ERROR(ClassCapExceeded)

// suspension
LINVOL_DEFINE_ERROR(Infeasible)
LINVOL_DEFINE_ERROR(TraceError)
LINVOL_DEFINE_ERROR(NonpositiveHeight)
LINVOL_DEFINE_ERROR(PatternError)

// cocycle / weakmix
LINVOL_DEFINE_ERROR(NonPositiveInput)
LINVOL_DEFINE_ERROR(InsufficientSteps)
LINVOL_DEFINE_ERROR(NoAdmissibleSample)
LINVOL_DEFINE_ERROR(PrecisionExhausted)
LINVOL_DEFINE_ERROR(SingularOrbit)
LINVOL_DEFINE_ERROR(HypothesisError)

// cli
LINVOL_DEFINE_ERROR(ConfigError)

#undef LINVOL_DEFINE_ERROR

/// Raised when the last letters of both rows have equal length, so the
/// induction step is not defined. Carries the step index along a path.
class TieError : public Error {
 public:
  explicit TieError(std::size_t step)
      : Error("TieError", "length tie between the last letters at step " + std::to_string(step)),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace linvol
