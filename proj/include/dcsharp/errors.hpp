#pragma once

#include <stdexcept>
#include <string>

namespace dcsharp {

/// Caller violated an operation's precondition (bad flags, mismatched jets, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reciprocal of a jet whose constant term vanishes.
class SingularJetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Derivative requested above the jet's truncation degree.
class DegreeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Parameter outside a family's domain (e.g. log_power with c < e).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A weight sequence failed log-convexity (or M_0 = 1) validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction hypothesis does not hold (e.g. rho_n does not tend to 0).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index range exceeded what the representation can hold.
class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcsharp
