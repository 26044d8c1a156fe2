#pragma once

#include <stdexcept>
#include <string>

namespace pberg {

/// Invalid argument to a library entry point (bad resolution, point outside
/// the domain, p < 1, mismatched sizes, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// The constraint rows handed to a solver are rank deficient (e.g. the
/// direction annihilates every basis function vanishing at the base point).
class RankError : public std::runtime_error {
 public:
  explicit RankError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pberg
