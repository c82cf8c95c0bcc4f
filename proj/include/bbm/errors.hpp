#pragma once

#include <stdexcept>
#include <string>

namespace bbm {

// Base for all typed failures; `name()` is the stable identifier surfaced
// by the CLI (exit-code diagnostics) and by tests.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Spectral resolution too small: tail-mass monitor tripped.
class TailOverflow : public Error {
 public:
  TailOverflow(std::size_t required, const std::string& what)
      : Error("TailOverflow", what), required_cutoff(required) {}
  std::size_t required_cutoff;
};

// Norm grew by more than the stability factor within a single step.
class StepUnstable : public Error {
 public:
  explicit StepUnstable(const std::string& what) : Error("StepUnstable", what) {}
};

// Halving the quadrature step moved the result by more than 10%.
class QuadratureUnderResolved : public Error {
 public:
  explicit QuadratureUnderResolved(const std::string& what)
      : Error("QuadratureUnderResolved", what) {}
};

// Bootstrap polynomial has no real roots (discriminant < 0).
class NoRealRoots : public Error {
 public:
  explicit NoRealRoots(const std::string& what) : Error("NoRealRoots", what) {}
};

class GammaOutOfRange : public Error {
 public:
  explicit GammaOutOfRange(const std::string& what) : Error("GammaOutOfRange", what) {}
};

class MuTooSmall : public Error {
 public:
  explicit MuTooSmall(const std::string& what) : Error("MuTooSmall", what) {}
};

// Sequence search hit the wavenumber cap before reaching a target norm.
class TargetUnreachable : public Error {
 public:
  TargetUnreachable(std::size_t cap, const std::string& what)
      : Error("TargetUnreachable", what), cap(cap) {}
  std::size_t cap;
};

// Bad flag, bad config key, or malformed config file.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("InvalidConfig", what) {}
};

}  // namespace bbm
