#pragma once
#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace cclab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Centralized tolerances. Every module reads these instead of inventing its own.
struct ToleranceProfile {
  double membership = 1e-9;       // slack added to defining inequalities
  double bisection_rel = 1e-10;   // relative width for gauge/radius bisection
  double stationarity = 1e-8;     // optimizer / projection fixed-point tolerance
};

inline const ToleranceProfile& tols() {
  static ToleranceProfile t;
  return t;
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stated precondition does not hold (caller bug, not a search failure).
struct PreconditionError : Error {
  using Error::Error;
};

// A search or verification exhausted its budget; message carries the best near-miss.
struct SearchError : Error {
  using Error::Error;
};

}  // namespace cclab
