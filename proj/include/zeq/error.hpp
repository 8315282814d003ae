#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zeq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported user input (bad expression, unknown variable, zero germ, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A series is not regular in the requested variable (its restriction to that axis vanishes).
class NotRegular : public Error {
 public:
  explicit NotRegular(const std::string& var)
      : Error("not regular in " + var), var_(var) {}
  const std::string& var() const noexcept { return var_; }

 private:
  std::string var_;
};

/// Raised by a germ computation when a quantity that must be decided is zero to the
/// current precision. Caught by the precision controller, never escapes it.
class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(const std::string& quantity, unsigned precision)
      : Error("insufficient precision " + std::to_string(precision) + " for " + quantity),
        quantity_(quantity),
        precision_(precision) {}
  const std::string& quantity() const noexcept { return quantity_; }
  unsigned precision() const noexcept { return precision_; }

 private:
  std::string quantity_;
  unsigned precision_;
};

/// The precision budget ran out while a quantity was still undecided.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& quantity, unsigned max_precision)
      : Error("precision exhausted at " + std::to_string(max_precision) + " while deciding " +
              quantity),
        quantity_(quantity),
        max_precision_(max_precision) {}
  const std::string& quantity() const noexcept { return quantity_; }
  unsigned max_precision() const noexcept { return max_precision_; }

 private:
  std::string quantity_;
  unsigned max_precision_;
};

/// No accepted coordinate change was found within the trial budget.
class TrialsExhausted : public Error {
 public:
  TrialsExhausted(unsigned trials, unsigned cond1_failures, unsigned cond2_failures,
                  unsigned cond3_failures)
      : Error("no nu-transverse coordinates after " + std::to_string(trials) +
              " trials (failures: cond1=" + std::to_string(cond1_failures) +
              ", cond2=" + std::to_string(cond2_failures) +
              ", cond3=" + std::to_string(cond3_failures) + ")"),
        trials_(trials),
        cond1_failures_(cond1_failures),
        cond2_failures_(cond2_failures),
        cond3_failures_(cond3_failures) {}
  unsigned trials() const noexcept { return trials_; }
  unsigned cond1_failures() const noexcept { return cond1_failures_; }
  unsigned cond2_failures() const noexcept { return cond2_failures_; }
  unsigned cond3_failures() const noexcept { return cond3_failures_; }

 private:
  unsigned trials_;
  unsigned cond1_failures_;
  unsigned cond2_failures_;
  unsigned cond3_failures_;
};

/// Input germ does not have an isolated singularity where one is required.
class NotIsolated : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace zeq
