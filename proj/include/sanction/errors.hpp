#ifndef SANCTION_ERRORS_HPP
#define SANCTION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sanction {

// Bad inputs: malformed files, parameter ranges, violated preconditions.
// The CLI maps these to exit code 1.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric trouble: singular value solves, non-convergent iterations.
// The CLI maps these to exit code 2.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sanction

#endif
