#include "mms/cubes.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>

namespace mms {

DyadicCubeTree build_cubes(const FiniteSpace& space, const NetHierarchy& nets) {
  require(nets.level_count() >= 1, "net hierarchy is empty");
  const int n = space.size();
  DyadicCubeTree tree;
  tree.delta = nets.delta;
  tree.k_min = nets.k_min;
  tree.k_max = nets.k_max;
  tree.scale0 = nets.scale0;
  tree.level_cubes.resize(nets.level_count());
  tree.point_cube.assign(nets.level_count(), std::vector<int>(n, -1));

  for (int l = 0; l < nets.level_count(); ++l) {
    const auto& centers = nets.levels[l];
    // per-point nearest admissible center; at the root every center is
    // admissible, below only the children of the point's current cube
    std::vector<int> choice(n, -1);
    if (l == 0) {
      const auto assign = nearest_center_assignment(space, centers);
      for (int p = 0; p < n; ++p) choice[p] = assign[p];
    } else {
      // children of a parent cube: centers of level l that are members of it
      std::vector<std::vector<int>> parent_children(tree.level_cubes[l - 1].size());
      for (std::size_t ci = 0; ci < centers.size(); ++ci) {
        const int cube_above = tree.point_cube[l - 1][centers[ci]];
        const int local = cube_above - tree.level_cubes[l - 1].front();
        parent_children[local].push_back(static_cast<int>(ci));
      }
      std::vector<VectorXd> center_rows(centers.size());
      for (std::size_t ci = 0; ci < centers.size(); ++ci)
        center_rows[ci] = space.distances_from(centers[ci]);
      for (int p = 0; p < n; ++p) {
        const int cube_above = tree.point_cube[l - 1][p];
        const int local = cube_above - tree.level_cubes[l - 1].front();
        double best = std::numeric_limits<double>::infinity();
        int best_ci = -1;
        for (int ci : parent_children[local]) {
          const double d = center_rows[ci][p];
          if (d < best) {  // strict: ties go to the smaller center id
            best = d;
            best_ci = ci;
          }
        }
        require(best_ci >= 0, "net nesting broken: parent cube without child center");
        choice[p] = best_ci;
      }
    }

    const int first_id = static_cast<int>(tree.cubes.size());
    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
      Cube q;
      q.id = first_id + static_cast<int>(ci);
      q.level = nets.k_min + l;
      q.center = centers[ci];
      tree.cubes.push_back(std::move(q));
      tree.level_cubes[l].push_back(first_id + static_cast<int>(ci));
    }
    for (int p = 0; p < n; ++p) {
      const int cube_id = first_id + choice[p];
      tree.point_cube[l][p] = cube_id;
      tree.cubes[cube_id].members.push_back(p);
    }
    if (l > 0) {
      for (int cid : tree.level_cubes[l]) {
        Cube& q = tree.cubes[cid];
        q.parent = tree.point_cube[l - 1][q.center];
        tree.cubes[q.parent].children.push_back(cid);
      }
    }
  }

  // drop empty cubes is unnecessary: every center is a member of its own cube
  // measure diam, inner radius, and the constants a0, C1
  tree.a0 = std::numeric_limits<double>::infinity();
  tree.C1 = 0.0;
  for (auto& q : tree.cubes) {
    double diam = 0.0;
    for (std::size_t a = 0; a < q.members.size(); ++a) {
      const VectorXd row = space.distances_from(q.members[a]);
      for (std::size_t b = a + 1; b < q.members.size(); ++b)
        diam = std::max(diam, row[q.members[b]]);
    }
    q.diam = diam;

    // largest realized distance r from the center such that B(center, r)
    // stays inside the cube
    const VectorXd row = space.distances_from(q.center);
    std::vector<char> is_member(space.size(), 0);
    for (int p : q.members) is_member[p] = 1;
    double nearest_outside = std::numeric_limits<double>::infinity();
    for (int p = 0; p < space.size(); ++p)
      if (!is_member[p]) nearest_outside = std::min(nearest_outside, row[p]);
    double inner = 0.0;
    for (int p : q.members) {
      if (row[p] < nearest_outside) inner = std::max(inner, row[p]);
    }
    q.inner_radius = inner;

    const double s = tree.scale(q.level);
    tree.C1 = std::max(tree.C1, q.diam / s);
    tree.a0 = std::min(tree.a0, q.inner_radius / s);
  }
  if (!std::isfinite(tree.a0)) tree.a0 = 0.0;
  return tree;
}

AxiomReport verify_cube_axioms(const FiniteSpace& space, const DyadicCubeTree& tree) {
  AxiomReport rep;
  const int n = space.size();
  const int L = tree.levels();

  // (i) full cover, each level a partition
  rep.full_cover = true;
  for (int l = 0; l < L && rep.full_cover; ++l) {
    std::vector<int> seen(n, 0);
    for (int cid : tree.level_cubes[l])
      for (int p : tree.cubes[cid].members) ++seen[p];
    for (int p = 0; p < n; ++p)
      if (seen[p] != 1 || tree.point_cube[l][p] < 0) {
        rep.full_cover = false;
        rep.witness_point = p;
        rep.detail = "point not covered exactly once at level " +
                     std::to_string(tree.k_min + l);
        break;
      }
  }

  // (ii)+(iii): the members of any finer cube lie in exactly one coarser cube
  rep.nesting = true;
  rep.unique_parent = true;
  for (int l = 1; l < L; ++l) {
    for (int lc = 0; lc < l; ++lc) {
      for (int cid : tree.level_cubes[l]) {
        const auto& q = tree.cubes[cid];
        int coarse = -1;
        for (int p : q.members) {
          const int c = tree.point_cube[lc][p];
          if (coarse == -1) coarse = c;
          if (c != coarse) {
            rep.nesting = false;
            rep.unique_parent = false;
            rep.witness_cube = cid;
            rep.witness_point = p;
            rep.detail = "cube straddles two ancestors";
            break;
          }
        }
        if (!rep.nesting) break;
      }
      if (!rep.nesting) break;
    }
    if (!rep.nesting) break;
  }
  if (rep.nesting) {
    for (int l = 1; l < L && rep.unique_parent; ++l)
      for (int cid : tree.level_cubes[l]) {
        const auto& q = tree.cubes[cid];
        if (q.parent < 0 || tree.point_cube[l - 1][q.center] != q.parent) {
          rep.unique_parent = false;
          rep.witness_cube = cid;
          rep.detail = "parent pointer inconsistent";
          break;
        }
      }
  }

  // (iv) diameters against the reported C1
  rep.diameter_bound = true;
  for (const auto& q : tree.cubes) {
    if (q.diam > tree.C1 * tree.scale(q.level) * (1.0 + 1e-12)) {
      rep.diameter_bound = false;
      rep.witness_cube = q.id;
      rep.detail = "diameter exceeds C1 * delta^k";
      break;
    }
  }

  // (v) every cube contains the ball of radius a0 * scale around its center
  rep.contains_ball = tree.a0 > 0.0;
  if (!rep.contains_ball) rep.detail = "a0 is not positive";
  for (const auto& q : tree.cubes) {
    if (!rep.contains_ball) break;
    const double r = tree.a0 * tree.scale(q.level) * (1.0 - 1e-12);
    const VectorXd row = space.distances_from(q.center);
    std::vector<char> is_member(n, 0);
    for (int p : q.members) is_member[p] = 1;
    for (int p = 0; p < n; ++p)
      if (row[p] <= r && !is_member[p]) {
        rep.contains_ball = false;
        rep.witness_cube = q.id;
        rep.witness_point = p;
        rep.detail = "ball B(center, a0 delta^k) leaks outside the cube";
        break;
      }
  }
  return rep;
}

nlohmann::json AxiomReport::to_json() const {
  return {{"full_cover", full_cover},
          {"nesting", nesting},
          {"unique_parent", unique_parent},
          {"diameter_bound", diameter_bound},
          {"contains_ball", contains_ball},
          {"pass", all()},
          {"witness_cube", witness_cube},
          {"witness_point", witness_point},
          {"detail", detail}};
}

nlohmann::json DyadicCubeTree::to_json() const {
  nlohmann::json levels_json = nlohmann::json::array();
  for (int l = 0; l < levels(); ++l) {
    nlohmann::json cubes_json = nlohmann::json::array();
    for (int cid : level_cubes[l]) {
      const Cube& q = cubes[cid];
      cubes_json.push_back({{"center", q.center},
                            {"members", q.members},
                            {"parent", q.parent},
                            {"diam", q.diam},
                            {"inner_radius", q.inner_radius}});
    }
    levels_json.push_back({{"k", k_min + l}, {"cubes", std::move(cubes_json)}});
  }
  return {{"delta", delta},
          {"scale0", scale0},
          {"levels", std::move(levels_json)},
          {"a0", a0},
          {"C1", C1}};
}

}  // namespace mms
