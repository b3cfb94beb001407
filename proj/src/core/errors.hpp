#pragma once

#include <stdexcept>
#include <string>

namespace apspc {

// A request exceeds an explicit safety budget (enumeration size, color
// count beyond the state-space limit, ...).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document (JSON structure, missing field, bad value).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble: unreadable, unwritable or missing file.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A well-formed request has no feasible answer (e.g. a color missing from
// the whole graph when a covering path is required).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace apspc
