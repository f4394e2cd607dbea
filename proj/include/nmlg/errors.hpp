#pragma once

#include <stdexcept>

namespace nmlg {

// Quadrature ran out of subdivision budget before reaching the requested tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Importance-sampling weights collapsed (effective sample size below 1% of draws).
class proposal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nmlg
