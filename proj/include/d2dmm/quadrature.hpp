#pragma once

// Adaptive Gauss-Kronrod 15/7 quadrature over finite and semi-infinite
// intervals.  Panels are bisected worst-error-first under a hard panel
// budget; evaluation is sequential, so results are bit-deterministic for
// a given integrand.

#include <functional>
#include <stdexcept>

namespace d2dmm {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;       // absolute error estimate
  int evaluations = 0;      // integrand evaluations consumed
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_panels = 2000;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Budget exhausted before the tolerance was met; carries the best estimate.
class QuadratureConvergenceError : public QuadratureError {
 public:
  QuadratureConvergenceError(const std::string& msg, QuadratureResult best)
      : QuadratureError(msg), best_estimate(best) {}
  QuadratureResult best_estimate;
};

// Integrand returned a non-finite value at a sampled point.
class QuadratureEvaluationError : public QuadratureError {
 public:
  QuadratureEvaluationError(const std::string& msg, double point)
      : QuadratureError(msg), at(point) {}
  double at;
};

// Integral of f over [a, b], a < b, both finite.  Endpoint singularities
// are tolerated (nodes are interior).
QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureOptions& opts = {});

// Integral of f over [a, inf) via the map t = a + (1-u)/u, u in (0, 1].
QuadratureResult integrate_semi_infinite(
    const std::function<double(double)>& f, double a,
    const QuadratureOptions& opts = {});

}  // namespace d2dmm
