#ifndef NBRISK_ERROR_HPP_
#define NBRISK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nbrisk {

// Malformed edge-list input. line() is 1-based; 0 when the error is not tied
// to a particular line (e.g. empty input).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A model, search or sampling parameter lies outside its valid domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The search interval does not bracket the target uniqueness.
class BracketingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nbrisk

#endif  // NBRISK_ERROR_HPP_
