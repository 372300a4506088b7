#pragma once

#include "kac/error.hpp"

namespace kac {

struct ToleranceConfig {
  // relative tolerance for approximate equality of scalars and operators
  double eq_tol = 1e-9;
  // singular values <= rank_tol * sigma_max are treated as zero
  double rank_tol = 1e-10;
  // eigenvalues below this contribute 0 to x log x
  double entropy_floor = 1e-12;

  void validate() const {
    if (!(eq_tol > 0 && rank_tol > 0 && entropy_floor > 0))
      throw Error(ErrorCode::PreconditionFailed, "tolerances must be strictly positive");
    if (!(rank_tol < eq_tol && eq_tol < 1))
      throw Error(ErrorCode::PreconditionFailed, "tolerances must satisfy rank_tol < eq_tol < 1");
  }

  // Keeps rank_tol below eq_tol when only eq_tol is overridden.
  static ToleranceConfig with_eq_tol(double eq) {
    ToleranceConfig t;
    t.eq_tol = eq;
    if (t.rank_tol >= eq) t.rank_tol = eq / 10;
    t.validate();
    return t;
  }
};

}  // namespace kac
