#pragma once

#include <stdexcept>
#include <string>

namespace siss {

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters, malformed specs or files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The Gram function G_0 comes too close to zero for orthonormalization.
class DegenerateGeneratorError : public InputError {
 public:
  using InputError::InputError;
};

/// Operation needs a tensor-product generator and got something else.
class UnsupportedGeneratorError : public InputError {
 public:
  using InputError::InputError;
};

/// The weighted lattice sum diverges for the requested derivative order.
class DivergentSeriesError : public Error {
 public:
  using Error::Error;
};

/// A truncation or quadrature loop hit its cap before reaching tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  explicit ConvergenceError(const std::string& what)
      : ConvergenceError(what, 0.0, 0.0) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace siss
