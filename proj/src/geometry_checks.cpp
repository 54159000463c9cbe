#include "mms/geometry_checks.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace mms {

std::vector<int> default_center_sample(const FiniteSpace& space, int cap) {
  const int n = space.size();
  const int stride = std::max(1, (n + cap - 1) / cap);
  std::vector<int> centers;
  for (int i = 0; i < n; i += stride) centers.push_back(i);
  return centers;
}

DoublingReport estimate_doubling(const FiniteSpace& space, double b, double tau,
                                 const std::vector<int>& center_sample,
                                 int max_radii_per_center) {
  require(b > 0, "doubling scale b must be positive");
  require(tau >= 1.0, "tau must be >= 1");
  require(!center_sample.empty(), "empty center sample");

  DoublingReport rep;
  rep.tau = tau;
  rep.b = b;

  std::vector<DoublingReport> local(center_sample.size());
  parallel_for(0, static_cast<int>(center_sample.size()), [&](int ci) {
    const int c = center_sample[ci];
    const CenterView view = make_center_view(space, c);
    // cumulative mass per distinct-radius prefix
    const int groups = static_cast<int>(view.radii.size());
    std::vector<double> cum(groups);
    {
      double acc = 0.0;
      int g = 0;
      for (int k = 0; k < static_cast<int>(view.order.size()); ++k) {
        acc += space.mass(view.order[k]);
        if (k + 1 == view.group_end[g]) cum[g++] = acc;
      }
    }
    int last_small = groups - 1;
    while (last_small >= 0 && view.radii[last_small] > b) --last_small;
    if (last_small < 0) return;
    const int stride = std::max(1, (last_small + 1) / max_radii_per_center);
    DoublingReport& lr = local[ci];
    for (int g = 0; g <= last_small; g += stride) {
      const double r = view.radii[g];
      if (r <= 0.0) continue;
      // largest realized radius <= tau * r
      int hi = static_cast<int>(std::upper_bound(view.radii.begin(), view.radii.end(),
                                                 tau * r) -
                                view.radii.begin()) - 1;
      if (hi < g) hi = g;
      const double ratio = cum[hi] / cum[g];
      ++lr.pairs;
      if (ratio > lr.constant) {
        lr.constant = ratio;
        lr.argmax_center = c;
        lr.argmax_r = r;
        lr.argmax_R = view.radii[hi];
      }
    }
    // always include the largest admissible radius so chain-scale pairs are covered
    {
      const double r = view.radii[last_small];
      if (r > 0.0) {
        int hi = static_cast<int>(std::upper_bound(view.radii.begin(), view.radii.end(),
                                                   tau * r) -
                                  view.radii.begin()) - 1;
        const double ratio = cum[hi] / cum[last_small];
        ++lr.pairs;
        if (ratio > lr.constant) {
          lr.constant = ratio;
          lr.argmax_center = c;
          lr.argmax_r = r;
          lr.argmax_R = view.radii[hi];
        }
      }
    }
  });

  for (const auto& lr : local) {
    rep.pairs += lr.pairs;
    if (lr.constant > rep.constant) {
      rep.constant = lr.constant;
      rep.argmax_center = lr.argmax_center;
      rep.argmax_r = lr.argmax_r;
      rep.argmax_R = lr.argmax_R;
    }
  }
  require(rep.pairs > 0, "no admissible balls in the sample");
  return rep;
}

nlohmann::json DoublingReport::to_json() const {
  return {{"tau", tau},
          {"b", b},
          {"D", constant},
          {"pairs", pairs},
          {"argmax_center", argmax_center},
          {"argmax_r", argmax_r},
          {"argmax_R", argmax_R}};
}

MidpointReport verify_approximate_midpoint(const FiniteSpace& space, double R0,
                                           double beta, double relax) {
  require(beta > 0.5 && beta < 1.0, "beta must lie in (1/2, 1)");
  const int n = space.size();
  MidpointReport rep;
  rep.R0 = R0;
  rep.beta = beta;
  rep.relax = relax;

  std::vector<MidpointReport> local(n);
  parallel_for(0, n, [&](int i) {
    const VectorXd di = space.distances_from(i);
    MidpointReport& lr = local[i];
    VectorXd v(n);
    for (int j = i + 1; j < n; ++j) {
      const double d = di[j];
      if (d <= R0) continue;
      const VectorXd dj = space.distances_from(j);
      v = di.cwiseMax(dj);
      v[i] = v[j] = std::numeric_limits<double>::infinity();
      const double best = v.minCoeff();
      const double ratio = best / d;
      ++lr.pairs;
      if (ratio > lr.worst_ratio) {
        lr.worst_ratio = ratio;
        lr.worst_i = i;
        lr.worst_j = j;
      }
      if (!(best < beta * d + relax)) lr.ok = false;
    }
  });
  for (const auto& lr : local) {
    rep.pairs += lr.pairs;
    rep.ok = rep.ok && lr.ok;
    if (lr.worst_ratio > rep.worst_ratio) {
      rep.worst_ratio = lr.worst_ratio;
      rep.worst_i = lr.worst_i;
      rep.worst_j = lr.worst_j;
    }
  }
  return rep;
}

nlohmann::json MidpointReport::to_json() const {
  return {{"R0", R0},
          {"beta", beta},
          {"relax", relax},
          {"ok", ok},
          {"pairs", pairs},
          {"worst_ratio", worst_ratio},
          {"worst_pair", {worst_i, worst_j}}};
}

}  // namespace mms
