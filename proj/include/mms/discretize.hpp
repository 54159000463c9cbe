#ifndef MMS_DISCRETIZE_HPP
#define MMS_DISCRETIZE_HPP

#include "mms/space.hpp"
#include "mms/weight.hpp"

namespace mms {

struct DiscretizeOptions {
  // above this the all-pairs matrix is not materialized and the space is
  // returned with a lazy per-source backend
  int max_dense_points = 20000;
  bool force_dense = false;  // error instead of falling back to lazy
  bool estimate_tail = true; // record truncated tail mass for sign = -1
};

/// Realizes (R^d, rho_phi, mu_{sign*phi}) on a uniform grid: point masses
/// e^{sign*phi(x_i)} h^d, metric from the weighted grid graph. Deterministic:
/// identical inputs give bit-identical matrices.
FiniteSpace discretize(const WeightSpec& spec, int sign, const Box& box, double h,
                       const DiscretizeOptions& opts = {});

}  // namespace mms

#endif
