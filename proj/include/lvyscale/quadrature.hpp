#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace lvyscale {

struct QuadratureTolerance {
  double absolute = 1e-10;
  double relative = 1e-8;
  unsigned max_depth = 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Raised when bisection reaches max_depth without meeting the
/// tolerance. Carries the error estimate actually reached.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]: the panel with the
/// largest error estimate is bisected until the total meets the tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureTolerance& tol = {});

}  // namespace lvyscale
