#pragma once

#include <stdexcept>
#include <string>

namespace mzstar {

/// Malformed index text, JSON, or structurally invalid index.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An infinite-sum operation was asked to evaluate a divergent index.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument outside an operation's precondition (|z| >= 1, c = 2, k > n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mzstar
