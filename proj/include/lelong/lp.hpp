#pragma once

#include <lelong/common.hpp>

namespace lelong::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vector x;
  double objective = 0.0;
  // Minimal L1 residual ||Ax - b||_1 over x >= 0 found by phase one.
  double infeasibility = 0.0;
};

/// Dense two-phase simplex with Bland's rule for
///   maximize c^T x  subject to  A x = b,  x >= 0.
///
/// The problem is declared feasible when the phase-one residual is at most
/// `feas_tol`. Intended for the tiny problems of this library (a handful of
/// rows, a few hundred columns). Throws SolverError on iteration overrun.
Result maximize(const Matrix& A, const Vector& b, const Vector& c, double feas_tol = kTauMem);

/// Phase one only: the minimal L1 residual of A x = b over x >= 0.
double min_infeasibility(const Matrix& A, const Vector& b);

} // namespace lelong::lp
