#ifndef PRIMEPROD_ERRORS_HPP
#define PRIMEPROD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace primeprod {

// Thrown when a request would exceed a configured resource ceiling
// (prime sieve limit, modulus ceiling).  The CLI maps this to exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primeprod

#endif
