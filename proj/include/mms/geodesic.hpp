#ifndef MMS_GEODESIC_HPP
#define MMS_GEODESIC_HPP

#include "mms/grid.hpp"
#include "mms/weight.hpp"

namespace mms {

struct GeodesicEstimate {
  double estimate = 0.0;  // best available value, lower <= estimate <= upper
  double lower = 0.0;     // max(|x-y|, graph/anisotropy - quadrature slack)
  double upper = 0.0;     // min(straight-segment length, graph + quadrature slack)
  double graph = 0.0;     // raw grid-graph distance including snap segments
  double segment = 0.0;   // conformal length of the straight segment
  double quad_error = 0.0;
  std::int64_t nodes = 0;
};

/// Stencil anisotropy: worst-case ratio of a shortest grid polyline to the
/// straight line under a constant metric, for the 3^d-1 neighborhood.
double grid_anisotropy(int d);

/// Conformal length of the straight segment from x to y under spec's metric.
double segment_length(const WeightSpec& spec, const VectorXd& x, const VectorXd& y,
                      double resolution);

/// Grid-graph estimate of the geodesic distance rho(x, y) with bracketing
/// bounds. Throws if the grid does not connect the snapped endpoints.
GeodesicEstimate geodesic_distance(const WeightSpec& spec, const VectorXd& x,
                                   const VectorXd& y, const Box& domain,
                                   double resolution);

struct EquivalenceReport {
  double radius = 0.0;   // pairs with graph distance below this are tested
  double constant = 1.0; // smallest single C with C^-1 m(x)|x-y| <= rho <= C m(x)|x-y|
  std::int64_t pairs = 0;
  std::int64_t sources = 0;
};

/// Sweeps all ordered grid pairs with rho(x,y) < R and measures the best
/// two-sided comparison constant between rho and m(x)|x-y|.
EquivalenceReport check_metric_equivalence(const WeightSpec& spec, const Box& box,
                                           double h, double R);

}  // namespace mms

#endif
