#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohere {

enum class ErrorKind {
  Parse,
  IllTyped,
  HeadNotInTheory,
  UnitForbidden,
  BadOccurrence,
  NoArrow,
  SizeMismatch,
  NotPsiFactor,
  UnitPresent,
  PreconditionViolated,
  BoundaryMismatch,
  BudgetExhausted,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Every failure in the library is reported through this exception. The
/// optional position is a byte offset into the text the offending value was
/// parsed from, when it came from text.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(ErrorKind kind, const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), kind_(kind), position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }
  bool has_position() const noexcept { return position_ != npos; }

 private:
  ErrorKind kind_;
  std::size_t position_;
};

}  // namespace cohere
