#pragma once

#include <stdexcept>
#include <string>

namespace subwave {

/// Argument outside the mathematical domain of an operation
/// (negative time, alpha outside (0,1), beta outside its band, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical method could not reach its accuracy target. Carries the
/// error estimate that was actually achieved.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// The subordinator model lacks the representation an operation needs
/// (e.g. a Levy tail for a model given only by its Laplace symbol).
class UnsupportedRepresentation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BracketNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LevelNotAttained : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subwave
