#include "mms/quadrature.hpp"

#include <cmath>

namespace mms {

double integrate_midpoint(const ScalarFn& f, double a, double b, double resolution) {
  require(resolution > 0, "quadrature resolution must be positive");
  if (b <= a) return 0.0;
  const auto n = static_cast<std::int64_t>(std::ceil((b - a) / resolution));
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    acc += f(a + (static_cast<double>(i) + 0.5) * h);
  }
  return acc * h;
}

double integrate_box_midpoint(const FieldFn& f, const Box& box, double resolution) {
  require(box.valid(), "degenerate box");
  require(resolution > 0, "quadrature resolution must be positive");
  const int d = box.dim();
  std::vector<std::int64_t> counts(d);
  std::vector<double> steps(d);
  std::int64_t total = 1;
  for (int k = 0; k < d; ++k) {
    counts[k] = static_cast<std::int64_t>(std::ceil((box.hi[k] - box.lo[k]) / resolution));
    counts[k] = std::max<std::int64_t>(counts[k], 1);
    steps[k] = (box.hi[k] - box.lo[k]) / static_cast<double>(counts[k]);
    total *= counts[k];
  }
  require(total <= (std::int64_t{1} << 28), "quadrature grid too large");
  double cell = 1.0;
  for (int k = 0; k < d; ++k) cell *= steps[k];
  VectorXd x(d);
  std::vector<std::int64_t> idx(d, 0);
  double acc = 0.0;
  for (std::int64_t it = 0; it < total; ++it) {
    for (int k = 0; k < d; ++k)
      x[k] = box.lo[k] + (static_cast<double>(idx[k]) + 0.5) * steps[k];
    acc += f(x);
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < counts[k]) break;
      idx[k] = 0;
    }
  }
  return acc * cell;
}

double integrate_radial_midpoint(const ScalarFn& log_g, int d, double a, double b,
                                 double resolution) {
  require(d >= 1, "dimension must be >= 1");
  if (b <= a) return 0.0;
  return integrate_midpoint(
      [&](double r) { return std::exp(log_g(r)) * std::pow(r, d - 1); }, a, b,
      resolution);
}

double integrate_radial_tail(const ScalarFn& log_g, int d, double a, double block,
                             double resolution, double rel_tail) {
  require(block > 0, "tail block must be positive");
  double acc = 0.0;
  double lo = a;
  for (int i = 0; i < 10000; ++i) {
    double piece = integrate_radial_midpoint(log_g, d, lo, lo + block, resolution);
    acc += piece;
    lo += block;
    if (acc > 0 && piece < rel_tail * acc) return acc;
  }
  throw std::runtime_error("radial tail integral did not stabilize");
}

}  // namespace mms
