#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ftla {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Membership tolerance shared by every geometric inclusion check.
inline constexpr double kMembershipTol = 1e-9;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonFiniteInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_dim(const Vector& v, int dim, const char* what) {
  if (v.size() != dim) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(dim) + ", got " +
                            std::to_string(v.size()));
  }
}

inline void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw NonFiniteInput(std::string(what) + ": non-finite entry");
  }
}

}  // namespace ftla
