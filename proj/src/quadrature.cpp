#include "lvyscale/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace lvyscale {

namespace {

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  unsigned depth = 0;
  bool operator<(const Panel& other) const { return error < other.error; }
};

constexpr std::size_t kMaxPanels = 1 << 14;

Panel rule(const std::function<double(double)>& f, double a, double b, unsigned depth) {
  // Fixed 15-point rule; boost reports its error on the reference interval
  // [-1, 1], hence the half-width factor.
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &error);
  return {a, b, value, error * 0.5 * std::abs(b - a), depth};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureTolerance& tol) {
  if (a == b) return {};
  std::priority_queue<Panel> open;
  open.push(rule(f, a, b, 0));
  double value = open.top().value;
  double error = open.top().error;
  std::size_t panels = 1;

  while (!open.empty() && std::isfinite(value) &&
         error > std::max(tol.absolute, tol.relative * std::abs(value))) {
    const Panel worst = open.top();
    open.pop();
    // Panels at the depth limit stay in the running error but are not split.
    if (worst.depth >= tol.max_depth || panels >= kMaxPanels) continue;
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = rule(f, worst.a, mid, worst.depth + 1);
    const Panel right = rule(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
    ++panels;
  }

  error = std::max(error, 0.0);
  const double allowed = std::max(tol.absolute, tol.relative * std::abs(value));
  if (!std::isfinite(value) || error > allowed) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: error estimate " << error
        << " > " << allowed;
    throw QuadratureError(msg.str(), error);
  }
  return {value, error};
}

}  // namespace lvyscale
