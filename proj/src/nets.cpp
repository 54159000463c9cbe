#include "mms/nets.hpp"

#include <cmath>

namespace mms {

NetHierarchy build_nets(const FiniteSpace& space, double delta, int k_min, int k_max,
                        double scale0) {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)");
  require(k_min <= k_max, "k_min must be <= k_max");
  NetHierarchy nets;
  nets.delta = delta;
  nets.k_min = k_min;
  nets.k_max = k_max;
  nets.scale0 = scale0 > 0.0 ? scale0 : space.diameter();
  require(nets.scale0 > 0.0, "space has zero diameter");

  const int n = space.size();
  std::vector<int> prev;
  for (int k = k_min; k <= k_max; ++k) {
    const double sep = nets.scale(k);
    std::vector<int> centers = prev;  // coarser centers stay centers
    // distance to the current center set, updated as centers are added
    VectorXd nearest = VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    for (int c : centers) nearest = nearest.cwiseMin(space.distances_from(c));
    for (int i = 0; i < n; ++i) {
      if (nearest[i] >= sep) {
        centers.push_back(i);
        nearest = nearest.cwiseMin(space.distances_from(i));
      }
    }
    std::sort(centers.begin(), centers.end());
    nets.levels.push_back(std::move(centers));
    prev = nets.levels.back();
  }
  return nets;
}

NetCheck verify_nets(const FiniteSpace& space, const NetHierarchy& nets) {
  NetCheck check;
  const int n = space.size();
  for (int l = 0; l < nets.level_count(); ++l) {
    const auto& centers = nets.levels[l];
    const double sep = nets.scale(nets.k_min + l);
    for (std::size_t a = 0; a < centers.size() && check.separation_ok; ++a)
      for (std::size_t b = a + 1; b < centers.size(); ++b)
        if (space.dist(centers[a], centers[b]) < sep) {
          check.separation_ok = false;
          check.bad_level = nets.k_min + l;
          check.bad_a = centers[a];
          check.bad_b = centers[b];
          break;
        }
    VectorXd nearest = VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    for (int c : centers) nearest = nearest.cwiseMin(space.distances_from(c));
    for (int i = 0; i < n; ++i)
      if (nearest[i] >= sep) {  // such a point could be added, so the net is not maximal
        check.maximality_ok = false;
        check.bad_level = nets.k_min + l;
        check.bad_a = i;
      }
    if (l > 0) {
      const auto& coarse = nets.levels[l - 1];
      if (!std::includes(centers.begin(), centers.end(), coarse.begin(), coarse.end())) {
        check.nesting_ok = false;
        check.bad_level = nets.k_min + l;
      }
    }
  }
  return check;
}

}  // namespace mms
