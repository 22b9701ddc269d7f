#pragma once

#include <stdexcept>

namespace taucert {

// Violation of a theorem hypothesis gate; the message names the bound.
struct HypothesisError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Kernel requested from a system of full column rank.
struct EmptyKernelError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace taucert
