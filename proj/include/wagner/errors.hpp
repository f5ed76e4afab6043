#ifndef WAGNER_ERRORS_HPP
#define WAGNER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wagner {

/// Malformed input: bad letters, missing labels, schema violations. CLI exit 2.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configurable cap was exceeded (monoid size, loop count, node count). CLI exit 3.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace wagner

#endif
