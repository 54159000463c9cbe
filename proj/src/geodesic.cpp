#include "mms/geodesic.hpp"

#include "mms/quadrature.hpp"

#include <cmath>
#include <mutex>

namespace mms {

double grid_anisotropy(int d) {
  switch (d) {
    case 1: return 1.0;
    case 2: return 1.0 / std::cos(M_PI / 8.0);  // worst direction between axis and diagonal
    default: return 1.15;
  }
}

double segment_length(const WeightSpec& spec, const VectorXd& x, const VectorXd& y,
                      double resolution) {
  const double len = (y - x).norm();
  if (len == 0.0) return 0.0;
  const int n = std::max(8, static_cast<int>(std::ceil(len / resolution)) * 4);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    acc += spec.conformal(x + t * (y - x));
  }
  return acc * len / n;
}

GeodesicEstimate geodesic_distance(const WeightSpec& spec, const VectorXd& x,
                                   const VectorXd& y, const Box& domain,
                                   double resolution) {
  require(domain.contains(x, 1e-12) && domain.contains(y, 1e-12),
          "endpoints must lie in the domain box");
  const GridMetric gm = GridMetric::make(spec, domain, resolution);
  const auto& grid = gm.grid();
  const std::int64_t sx = grid.nearest(x);
  const std::int64_t sy = grid.nearest(y);

  GeodesicEstimate out;
  out.nodes = grid.count;
  out.segment = segment_length(spec, x, y, resolution);

  const VectorXd dist = dijkstra(gm, sx);
  if (!std::isfinite(dist[sy]))
    throw std::runtime_error("grid does not connect the endpoints at this resolution");

  // connect the true endpoints to their snap nodes like ordinary edges
  const auto snap = [&](const VectorXd& p, std::int64_t node) {
    const VectorXd q = grid.node(node);
    return 0.5 * (spec.conformal(p) + spec.conformal(q)) * (p - q).norm();
  };
  out.graph = dist[sy] + snap(x, sx) + snap(y, sy);

  // trapezoid error on each edge is O(h^3 |m''|); accumulated along a path it
  // stays below graph * h^2 * M2 / (12 * min m)
  const double m2 = gm.second_difference_bound();
  const double m_min = gm.conformal().minCoeff();
  out.quad_error = out.graph * resolution * resolution * m2 / (12.0 * std::max(m_min, 1.0));

  const double aniso = grid_anisotropy(grid.dim());
  out.upper = std::min(out.segment, out.graph + out.quad_error);
  out.lower = std::max((x - y).norm(), out.graph / aniso - out.quad_error);
  out.estimate = std::min(out.graph, out.upper);
  if (out.estimate < out.lower) out.estimate = out.lower;
  return out;
}

EquivalenceReport check_metric_equivalence(const WeightSpec& spec, const Box& box,
                                           double h, double R) {
  require(R > 0, "equivalence radius must be positive");
  const GridMetric gm = GridMetric::make(spec, box, h);
  const auto& grid = gm.grid();
  const std::int64_t n = grid.count;

  std::vector<double> worst(static_cast<std::size_t>(n), 1.0);
  std::vector<std::int64_t> counted(static_cast<std::size_t>(n), 0);
  parallel_for(0, static_cast<int>(n), [&](int i) {
    const VectorXd xi = grid.node(i);
    const double mi = spec.conformal(xi);
    const VectorXd dist = dijkstra(gm, i, R);
    double c = 1.0;
    std::int64_t cnt = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      if (j == i || !std::isfinite(dist[j]) || dist[j] >= R) continue;
      const double eu = (grid.node(j) - xi).norm();
      const double ref = mi * eu;
      if (ref <= 0 || dist[j] <= 0) continue;
      c = std::max(c, std::max(dist[j] / ref, ref / dist[j]));
      ++cnt;
    }
    worst[i] = c;
    counted[i] = cnt;
  });

  EquivalenceReport rep;
  rep.radius = R;
  rep.sources = n;
  for (std::int64_t i = 0; i < n; ++i) {
    rep.constant = std::max(rep.constant, worst[i]);
    rep.pairs += counted[i];
  }
  return rep;
}

}  // namespace mms
