#include "mms/discretize.hpp"

#include "mms/quadrature.hpp"

#include <cmath>

namespace mms {

namespace {

// fraction of mu_{-phi} mass outside the box inradius, for radial weights
double tail_fraction_estimate(const WeightSpec& spec, const Box& box) {
  if (spec.family() == WeightFamily::tabulated) return 0.0;
  double inradius = std::numeric_limits<double>::infinity();
  for (int k = 0; k < box.dim(); ++k) {
    inradius = std::min(inradius, std::abs(box.lo[k]));
    inradius = std::min(inradius, std::abs(box.hi[k]));
  }
  if (!std::isfinite(inradius) || inradius <= 0) return 1.0;
  VectorXd e1 = VectorXd::Zero(spec.dimension());
  e1[0] = 1.0;
  const ScalarFn lg = [&](double r) { return -spec.phi(r * e1); };
  const double res = std::max(1e-3, inradius / 4000.0);
  const double inner = integrate_radial_midpoint(lg, spec.dimension(), 0.0, inradius, res);
  const double tail = integrate_radial_tail(lg, spec.dimension(), inradius,
                                            std::max(0.5, inradius / 4.0), res);
  return tail / std::max(inner + tail, 1e-300);
}

}  // namespace

FiniteSpace discretize(const WeightSpec& spec, int sign, const Box& box, double h,
                       const DiscretizeOptions& opts) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  require(h > 0, "grid step must be positive");
  auto gm = std::make_shared<const GridMetric>(GridMetric::make(spec, box, h));
  const auto& grid = gm->grid();
  const std::int64_t n = grid.count;

  const double cell = std::pow(h, grid.dim());
  VectorXd masses(n);
  for (std::int64_t i = 0; i < n; ++i)
    masses[i] = std::exp(sign * spec.phi(grid.node(i))) * cell;

  nlohmann::ordered_json meta;
  meta["spec"] = spec.to_json();
  meta["sign"] = sign;
  meta["h"] = h;
  meta["box"] = {{"lo", std::vector<double>(grid.box.lo.data(),
                                            grid.box.lo.data() + grid.box.lo.size())},
                 {"hi", std::vector<double>(grid.box.hi.data(),
                                            grid.box.hi.data() + grid.box.hi.size())}};
  meta["cell_diameter"] = h * std::sqrt(double(grid.dim()));
  if (sign == -1 && opts.estimate_tail)
    meta["truncated_tail_fraction"] = tail_fraction_estimate(spec, grid.box);

  if (n > opts.max_dense_points) {
    if (opts.force_dense)
      throw std::runtime_error(
          "grid exceeds the dense-matrix budget (" + std::to_string(n) + " points); "
          "raise max_dense_points or use the lazy per-source mode");
    FiniteSpace s = FiniteSpace::grid_backed(gm, std::move(masses));
    s.metadata = std::move(meta);
    return s;
  }

  // all-pairs geodesics; rows are independent, min-symmetrized afterwards so
  // dist(i,j) == dist(j,i) holds exactly
  MatrixXd dist(n, n);
  parallel_for(0, static_cast<int>(n), [&](int i) {
    dist.col(i) = dijkstra(*gm, i);
  });
  require(dist.maxCoeff() < kUnreached, "grid graph is disconnected");
  for (std::int64_t i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double v = std::min(dist(i, j), dist(j, i));
      dist(i, j) = dist(j, i) = v;
    }
  }

  MatrixXd coords(n, grid.dim());
  for (std::int64_t i = 0; i < n; ++i) coords.row(i) = grid.node(i);
  FiniteSpace s = FiniteSpace::dense(std::move(dist), std::move(masses), std::move(coords));
  s.metadata = std::move(meta);
  return s;
}

}  // namespace mms
