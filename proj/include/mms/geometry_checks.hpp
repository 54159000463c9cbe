#ifndef MMS_GEOMETRY_CHECKS_HPP
#define MMS_GEOMETRY_CHECKS_HPP

#include "mms/space.hpp"

#include <nlohmann/json_fwd.hpp>

namespace mms {

struct DoublingReport {
  double tau = 2.0;
  double b = 0.0;
  double constant = 1.0;  // empirical max mu(B') / mu(B) over sampled nested pairs
  std::int64_t pairs = 0;
  int argmax_center = -1;
  double argmax_r = 0.0, argmax_R = 0.0;

  nlohmann::json to_json() const;
};

/// Empirical local-doubling constant D_{tau,b}: max of mu(B(c,r')) / mu(B(c,r))
/// over sampled centers, realized radii r <= b, and the largest realized
/// r' <= tau * r. A lower bound for the true constant; monotone in tau and b
/// by construction.
DoublingReport estimate_doubling(const FiniteSpace& space, double b, double tau,
                                 const std::vector<int>& center_sample,
                                 int max_radii_per_center = 32);

/// Evenly strided center sample.
std::vector<int> default_center_sample(const FiniteSpace& space, int cap = 400);

struct MidpointReport {
  double R0 = 0.0;
  double beta = 0.0;
  double relax = 0.0;        // additive slack, one grid cell diameter
  bool ok = true;
  std::int64_t pairs = 0;    // pairs with d(x,y) > R0
  double worst_ratio = 0.0;  // max over pairs of min_z max(d(x,z), d(y,z)) / d(x,y)
  int worst_i = -1, worst_j = -1;

  nlohmann::json to_json() const;
};

/// Checks the approximate midpoint property: every pair with d(x,y) > R0 has
/// a point z with max(d(x,z), d(y,z)) < beta d(x,y) + relax.
MidpointReport verify_approximate_midpoint(const FiniteSpace& space, double R0,
                                           double beta, double relax = 0.0);

}  // namespace mms

#endif
