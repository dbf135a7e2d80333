#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvt {

/// Invalid configuration or violated precondition on user-supplied input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-finite value appeared during time integration.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t step, std::size_t i, std::size_t j)
      : std::runtime_error(what + " at step " + std::to_string(step) + ", cell (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")"),
        step_(step), i_(i), j_(j) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t step_;
  std::size_t i_;
  std::size_t j_;
};

}  // namespace lvt
