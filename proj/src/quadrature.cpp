#include "d2dmm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace d2dmm {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-index nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto probe = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw QuadratureEvaluationError(
          "integrand returned a non-finite value", x);
    return v;
  };

  double fv[15];
  fv[7] = probe(c);
  for (int j = 0; j < 7; ++j) {
    fv[j] = probe(c - h * kXgk[j]);
    fv[14 - j] = probe(c + h * kXgk[j]);
  }

  double resg = kWg[3] * fv[7];
  double resk = kWgk[7] * fv[7];
  double resabs = kWgk[7] * std::fabs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    const double sum = fv[j] + fv[14 - j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }

  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] *
              (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));

  double err = std::fabs((resk - resg) * h);
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(eps50 * resabs, err);

  return Panel{a, b, resk * h, err};
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("quadrature: requires a < b");
  if (!(opts.rel_tol >= 0.0) || !(opts.abs_tol >= 0.0))
    throw std::invalid_argument("quadrature: tolerances must be >= 0");
  if (opts.max_panels < 1)
    throw std::invalid_argument("quadrature: max_panels must be >= 1");

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  int evals = 15;
  heap.push(evaluate_panel(f, a, b));
  int panels = 1;
  double total_value = heap.top().value;
  double total_error = heap.top().error;

  auto target = [&] {
    return std::max(opts.abs_tol, opts.rel_tol * std::fabs(total_value));
  };

  while (total_error > target() && panels < opts.max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // interval at roundoff
    heap.pop();
    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    evals += 30;
    panels += 1;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Refresh the error sum to shed accumulated cancellation noise.
  if (total_error <= target() || panels >= opts.max_panels) {
    double fresh_value = 0.0;
    double fresh_error = 0.0;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> copy = heap;
    while (!copy.empty()) {
      fresh_value += copy.top().value;
      fresh_error += copy.top().error;
      copy.pop();
    }
    total_value = fresh_value;
    total_error = fresh_error;
  }

  QuadratureResult out{total_value, total_error, evals};
  if (total_error > target())
    throw QuadratureConvergenceError(
        "quadrature: panel budget exhausted before tolerance "
        "(best estimate attached)",
        out);
  return out;
}

}  // namespace

QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureOptions& opts) {
  if (a == b) return QuadratureResult{0.0, 0.0, 0};
  return adaptive(f, a, b, opts);
}

QuadratureResult integrate_semi_infinite(
    const std::function<double(double)>& f, double a,
    const QuadratureOptions& opts) {
  if (!std::isfinite(a))
    throw std::invalid_argument("quadrature: lower limit must be finite");
  // The head [a, a+1] is integrated in the original variable so an
  // integrable singularity at a sits where node spacing is densest.
  // Mapping it through u = 1/(1+t-a) instead would park it at u = 1,
  // where panel endpoints round onto the singular point itself.
  const double split = a + 1.0;
  auto g = [&f, split](double u) {
    const double t = split + (1.0 - u) / u;
    return f(t) / (u * u);
  };
  bool converged = true;
  QuadratureResult head{}, tail{};
  try {
    head = adaptive(f, a, split, opts);
  } catch (const QuadratureConvergenceError& e) {
    head = e.best_estimate;
    converged = false;
  }
  try {
    tail = adaptive(g, 0.0, 1.0, opts);
  } catch (const QuadratureConvergenceError& e) {
    tail = e.best_estimate;
    converged = false;
  }
  QuadratureResult total{head.value + tail.value, head.error + tail.error,
                         head.evaluations + tail.evaluations};
  if (!converged)
    throw QuadratureConvergenceError(
        "quadrature: failed to converge within the panel budget", total);
  return total;
}

}  // namespace d2dmm
