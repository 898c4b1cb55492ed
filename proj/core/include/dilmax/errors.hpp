#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dilmax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A (multiplier term, dilation, modulation) triple whose supports overlap
/// without the multiplier being flat there. The symbolic calculus refuses to
/// approximate; evaluate on a grid instead.
class PartialOverlap : public Error {
 public:
  PartialOverlap(std::int64_t scale, std::int64_t dilation, std::int64_t freq)
      : Error("partial overlap: scale " + std::to_string(scale) + ", dilation " +
              std::to_string(dilation) + ", frequency exponent " + std::to_string(freq)),
        scale_(scale),
        dilation_(dilation),
        freq_(freq) {}

  std::int64_t scale() const noexcept { return scale_; }
  std::int64_t dilation() const noexcept { return dilation_; }
  std::int64_t freq() const noexcept { return freq_; }

 private:
  std::int64_t scale_;
  std::int64_t dilation_;
  std::int64_t freq_;
};

class OutOfWindow : public Error {
 public:
  using Error::Error;
};

class SpecMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyDilationSet : public Error {
 public:
  EmptyDilationSet() : Error("dilation set is empty") {}
};

class NotEvaluable : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised when every candidate center in a tiling slot is forbidden. The
/// counting bound makes this unreachable for valid inputs.
class InfeasibleSlot : public Error {
 public:
  using Error::Error;
};

class WindowTooWide : public Error {
 public:
  using Error::Error;
};

}  // namespace dilmax
