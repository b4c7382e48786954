#pragma once

#include <stdexcept>
#include <string>

namespace pcgo {

// Two failure classes, mirrored in the CLI exit codes: bad inputs or
// configuration (exit 2) versus a numerical method not reaching its
// contract (exit 3).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace pcgo
