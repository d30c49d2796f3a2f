#ifndef JANGLAB_ERRORS_HPP_
#define JANGLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace janglab {

// Numerical and precondition failures carry a short kind tag
// ("stencil-error", "metric-degenerate", "range-error", ...) so callers
// can map a failure to an exit code and name the failing stage.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw numeric_error(kind, msg);
}

inline void require(bool cond, const std::string& kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace janglab

#endif  // JANGLAB_ERRORS_HPP_
