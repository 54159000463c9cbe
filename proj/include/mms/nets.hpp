#ifndef MMS_NETS_HPP
#define MMS_NETS_HPP

#include "mms/space.hpp"

namespace mms {

/// Nested maximal separated nets Z^k at scales scale0 * delta^k. Level k_min
/// is the coarsest; every coarser net is a subset of every finer net. Greedy
/// over ascending point ids, so the construction is deterministic.
struct NetHierarchy {
  double delta = 0.5;
  int k_min = 0;
  int k_max = 0;
  double scale0 = 0.0;
  std::vector<std::vector<int>> levels;  // centers per level, ascending ids

  int level_count() const { return static_cast<int>(levels.size()); }
  double scale(int k) const { return scale0 * std::pow(delta, k); }
  const std::vector<int>& centers(int k) const { return levels[k - k_min]; }
};

NetHierarchy build_nets(const FiniteSpace& space, double delta, int k_min, int k_max,
                        double scale0 = 0.0 /* 0 = space diameter */);

struct NetCheck {
  bool separation_ok = true;
  bool maximality_ok = true;
  bool nesting_ok = true;
  int bad_level = 0;
  int bad_a = -1, bad_b = -1;
};

/// Exhaustive verification of separation, maximality, and nesting.
NetCheck verify_nets(const FiniteSpace& space, const NetHierarchy& nets);

}  // namespace mms

#endif
