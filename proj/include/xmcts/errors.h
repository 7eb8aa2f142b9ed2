#pragma once

#include <stdexcept>
#include <string>

namespace xmcts {

// Invalid game id, board size or engine parameters.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A move that is not legal in the state it was applied to.
class IllegalMoveError : public std::invalid_argument {
 public:
  explicit IllegalMoveError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation called outside its contract (searching a terminal state, ...).
class UsageError : public std::logic_error {
 public:
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

// Malformed transcript or wire document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xmcts
