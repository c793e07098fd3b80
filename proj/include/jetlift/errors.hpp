#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetlift {

/// Operands live in spaces of different dimension.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class index_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A checked precondition failed. `index()` names the first offending
/// position (jet order, coordinate, ...) when one exists.
class precondition_error : public std::logic_error {
 public:
  precondition_error(const std::string& what, std::ptrdiff_t index = -1)
      : std::logic_error(what), index_(index) {}
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

/// A time-extended field does not have the required time-component class.
class classification_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A Laurent section left its degree window. Carries the window it needed.
class window_overflow : public std::runtime_error {
 public:
  window_overflow(const std::string& what, int required_lo, int required_hi)
      : std::runtime_error(what), lo_(required_lo), hi_(required_hi) {}
  int required_lo() const noexcept { return lo_; }
  int required_hi() const noexcept { return hi_; }

 private:
  int lo_, hi_;
};

/// Parse failure with 1-based line and column.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

}  // namespace jetlift
