#pragma once

#include <stdexcept>
#include <string>

namespace nsg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument values (domain violations, malformed windows).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Some sample of Z_L is not covered by any window support.
class CompletenessError : public Error {
 public:
  CompletenessError(const std::string& what, long long gap)
      : Error(what), gap_(gap) {}
  long long gap() const { return gap_; }

 private:
  long long gap_;
};

/// Translation parameter does not divide the signal length.
class LatticeError : public Error {
 public:
  using Error::Error;
};

/// Signal or coefficient shape does not match the system.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two systems do not share L and the channel sequence.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// The system is outside the parameter regime an operation requires.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_term_norm)
      : Error(what), last_term_norm_(last_term_norm) {}
  double last_term_norm() const { return last_term_norm_; }

 private:
  double last_term_norm_;
};

class NotAFrameError : public Error {
 public:
  NotAFrameError(const std::string& what, double lower_bound)
      : Error(what), lower_bound_(lower_bound) {}
  double lower_bound() const { return lower_bound_; }

 private:
  double lower_bound_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsg
