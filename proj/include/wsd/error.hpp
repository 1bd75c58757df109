#pragma once

#include <stdexcept>
#include <string>

namespace wsd {

// Data/validation error: malformed input, violated precondition, bad config.
class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse error carrying the 1-based line number of the offending line.
class parse_error : public error {
public:
  parse_error(const std::string& msg, int line)
      : error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace wsd
