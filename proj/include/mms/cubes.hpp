#ifndef MMS_CUBES_HPP
#define MMS_CUBES_HPP

#include "mms/nets.hpp"

#include <nlohmann/json_fwd.hpp>

namespace mms {

struct Cube {
  int id = -1;
  int level = 0;      // k index, k_min at the root level
  int center = -1;    // point id of the net center
  int parent = -1;    // cube id at level-1, -1 on the coarsest level
  std::vector<int> members;
  std::vector<int> children;
  double diam = 0.0;
  double inner_radius = 0.0;  // largest realized r with B(center, r) inside the cube
};

/// Dyadic cube hierarchy over a net hierarchy. At the coarsest level points
/// go to the nearest center; below, each point picks the nearest center among
/// the children of its current cube, which makes nesting structural. The
/// constants a0 and C1 are measured, not prescribed:
///   diam(Q) <= C1 * scale(k)    and    B(center, a0 * scale(k)) subset Q.
struct DyadicCubeTree {
  double delta = 0.5;
  int k_min = 0, k_max = 0;
  double scale0 = 0.0;
  std::vector<Cube> cubes;
  std::vector<std::vector<int>> level_cubes;   // cube ids per level
  std::vector<std::vector<int>> point_cube;    // per level: point id -> cube id
  double a0 = 0.0;
  double C1 = 0.0;

  double scale(int k) const { return scale0 * std::pow(delta, k); }
  int levels() const { return static_cast<int>(level_cubes.size()); }
  /// Cube containing point p at level k.
  const Cube& cube_at(int k, int p) const { return cubes[point_cube[k - k_min][p]]; }

  nlohmann::json to_json() const;
};

DyadicCubeTree build_cubes(const FiniteSpace& space, const NetHierarchy& nets);

struct AxiomReport {
  bool full_cover = false;       // (i) every point in exactly one cube per level
  bool nesting = false;          // (ii) finer cubes inside or disjoint from coarser
  bool unique_parent = false;    // (iii) one coarse cube contains each fine cube
  bool diameter_bound = false;   // (iv) diam <= C1 * scale
  bool contains_ball = false;    // (v) B(center, a0 * scale) inside cube
  bool all() const {
    return full_cover && nesting && unique_parent && diameter_bound && contains_ball;
  }
  int witness_cube = -1;
  int witness_point = -1;
  std::string detail;

  nlohmann::json to_json() const;
};

/// Exhaustive finite-space verification of the five cube axioms.
AxiomReport verify_cube_axioms(const FiniteSpace& space, const DyadicCubeTree& tree);

}  // namespace mms

#endif
