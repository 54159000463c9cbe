#include "mms/isoperimetry.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <set>

namespace mms {

Ball default_b0(const FiniteSpace& space) {
  int mode = 0;
  for (int i = 1; i < space.size(); ++i)
    if (space.mass(i) > space.mass(mode)) mode = i;
  const CenterView view = make_center_view(space, mode);
  double acc = 0.0;
  const double half = 0.5 * space.total_mass();
  int g = 0;
  for (int k = 0; k < static_cast<int>(view.order.size()); ++k) {
    acc += space.mass(view.order[k]);
    if (k + 1 == view.group_end[g]) {
      if (acc > half) return Ball{mode, view.radii[g]};
      ++g;
    }
  }
  return Ball{mode, view.radii.back()};
}

std::vector<double> dist_to_complement(const FiniteSpace& space,
                                       const std::vector<int>& A) {
  const int n = space.size();
  std::vector<char> in_a(n, 0);
  for (int p : A) in_a[p] = 1;
  std::vector<int> comp;
  for (int p = 0; p < n; ++p)
    if (!in_a[p]) comp.push_back(p);
  require(!A.empty(), "A must be nonempty");
  require(!comp.empty(), "A must be a proper subset (distance to complement undefined)");

  std::vector<double> out(A.size(), std::numeric_limits<double>::infinity());
  parallel_for(0, static_cast<int>(A.size()), [&](int idx) {
    const VectorXd row = space.distances_from(A[idx]);
    double best = std::numeric_limits<double>::infinity();
    for (int q : comp) best = std::min(best, row[q]);
    out[idx] = best;
  });
  return out;
}

BoundaryLayers boundary_layer(const FiniteSpace& space, const std::vector<int>& A,
                              double kappa) {
  const auto d = dist_to_complement(space, A);
  BoundaryLayers layers;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (d[i] <= kappa)
      layers.inner.push_back(A[i]);
    else
      layers.deep.push_back(A[i]);
  }
  return layers;
}

IsoperimetryReport estimate_isoperimetric(const FiniteSpace& space, const Ball& b0,
                                          const std::vector<TestSet>& family,
                                          const std::vector<double>& kappa_grid) {
  require(!family.empty(), "empty test family");
  require(!kappa_grid.empty(), "empty kappa grid");
  std::vector<double> grid = kappa_grid;
  std::sort(grid.begin(), grid.end());

  const VectorXd b0_row = space.distances_from(b0.center);

  IsoperimetryReport rep;
  rep.b0 = b0;
  rep.kappa_grid = grid;
  rep.c_curve.assign(grid.size(), std::numeric_limits<double>::infinity());
  rep.sets_tested = static_cast<int>(family.size());

  require(grid.front() > 0.0, "kappa grid must be positive");
  double global_min = std::numeric_limits<double>::infinity();
  for (const auto& set : family) {
    require(!set.points.empty(), "empty test set in family");
    for (int p : set.points)
      require(b0_row[p] > b0.radius, "test set intersects closed B0: " + set.name);
    const auto d = dist_to_complement(space, set.points);
    double mass_a = 0.0;
    for (int p : set.points) mass_a += space.mass(p);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double layer = 0.0;
      for (std::size_t i = 0; i < set.points.size(); ++i)
        if (d[i] <= grid[g]) layer += space.mass(set.points[i]);
      const double ratio = layer / (grid[g] * mass_a);
      rep.c_curve[g] = std::min(rep.c_curve[g], ratio);
      if (ratio < global_min) {
        global_min = ratio;
        rep.argmin_set = set.name;
        rep.argmin_kappa = grid[g];
      }
    }
  }
  // C_t is the inf over kappa <= t: enforce the cumulative minimum
  for (std::size_t g = 1; g < grid.size(); ++g)
    rep.c_curve[g] = std::min(rep.c_curve[g], rep.c_curve[g - 1]);
  rep.I_hat = rep.c_curve.front();
  rep.kappa0_empirical = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (rep.c_curve[g] > 0.0) rep.kappa0_empirical = grid[g];
  return rep;
}

std::vector<TestSet> make_test_family(const FiniteSpace& space, const Ball& b0,
                                      const std::vector<std::string>& kinds,
                                      const DyadicCubeTree* tree, unsigned seed) {
  const int n = space.size();
  const VectorXd b0_row = space.distances_from(b0.center);
  const double dmax = b0_row.maxCoeff();
  std::vector<TestSet> family;

  const auto add_if_ok = [&](TestSet set) {
    if (set.points.empty()) return;
    for (int p : set.points)
      if (b0_row[p] <= b0.radius) return;
    // a set equal to the whole space has no complement
    if (static_cast<int>(set.points.size()) == n) return;
    family.push_back(std::move(set));
  };

  for (const auto& kind : kinds) {
    if (kind == "annuli") {
      // metric annuli around the B0 center, a ladder of inner radii
      const int steps = 6;
      for (int s = 0; s < steps; ++s) {
        const double r1 = b0.radius + (dmax - b0.radius) * (0.02 + 0.12 * s);
        for (double width : {0.35, 0.8}) {
          const double r2 = std::min(dmax * 0.999, r1 + width * (dmax - b0.radius));
          TestSet set;
          set.name = "annulus[" + std::to_string(s) + "," + std::to_string(width) + "]";
          for (int p = 0; p < n; ++p)
            if (b0_row[p] > r1 && b0_row[p] <= r2) set.points.push_back(p);
          add_if_ok(std::move(set));
        }
      }
    } else if (kind == "slabs" && space.has_coords()) {
      const auto& coords = space.coords();
      for (int axis = 0; axis < coords.cols(); ++axis) {
        const double lo = coords.col(axis).minCoeff();
        const double hi = coords.col(axis).maxCoeff();
        for (int side = 0; side < 2; ++side) {
          for (double frac : {0.6, 0.75, 0.9}) {
            TestSet set;
            set.name = "slab[axis=" + std::to_string(axis) +
                       (side ? ",+," : ",-,") + std::to_string(frac) + "]";
            const double cut = side ? lo + frac * (hi - lo) : hi - frac * (hi - lo);
            for (int p = 0; p < n; ++p) {
              const double v = coords(p, axis);
              if ((side && v > cut) || (!side && v < cut)) set.points.push_back(p);
            }
            // trim points inside closed B0 instead of dropping the slab
            std::vector<int> trimmed;
            for (int p : set.points)
              if (b0_row[p] > b0.radius) trimmed.push_back(p);
            set.points = std::move(trimmed);
            add_if_ok(std::move(set));
          }
        }
      }
    } else if (kind == "cubes" && tree != nullptr) {
      std::mt19937_64 rng(seed);
      for (int l : {tree->levels() - 2, tree->levels() - 1}) {
        if (l < 1) continue;
        const auto& level = tree->level_cubes[l];
        std::vector<int> eligible;
        for (int cid : level) {
          bool ok = true;
          for (int p : tree->cubes[cid].members)
            if (b0_row[p] <= b0.radius) {
              ok = false;
              break;
            }
          if (ok) eligible.push_back(cid);
        }
        if (eligible.size() < 2) continue;
        for (int rep_i = 0; rep_i < 3; ++rep_i) {
          TestSet set;
          set.name = "cubes[level=" + std::to_string(l) + ",rep=" +
                     std::to_string(rep_i) + "]";
          std::set<int> chosen;
          const std::size_t want = std::max<std::size_t>(1, eligible.size() / 3);
          for (std::size_t t = 0; t < want; ++t)
            chosen.insert(eligible[rng() % eligible.size()]);
          for (int cid : chosen)
            for (int p : tree->cubes[cid].members) set.points.push_back(p);
          std::sort(set.points.begin(), set.points.end());
          add_if_ok(std::move(set));
        }
      }
    }
  }
  require(!family.empty(), "test family construction produced no admissible sets");
  return family;
}

LayerGrowthReport verify_layer_growth(const FiniteSpace& space, const Ball& b0,
                                      const std::vector<int>& A, double I,
                                      const std::vector<double>& t_grid,
                                      LayerGrowthMode mode) {
  LayerGrowthReport rep;
  rep.mode = mode;
  const VectorXd b0_row = space.distances_from(b0.center);
  bool in_complement_of_b0 = true;
  for (int p : A)
    if (b0_row[p] <= b0.radius) in_complement_of_b0 = false;

  const auto d = dist_to_complement(space, A);
  double mass_a = 0.0;
  for (int p : A) mass_a += space.mass(p);

  for (double t : t_grid) {
    LayerGrowthEntry e;
    e.t = t;
    double layer = 0.0;
    bool b0_part_in_layer = true;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (d[i] <= t) layer += space.mass(A[i]);
      else if (b0_row[A[i]] <= b0.radius) b0_part_in_layer = false;
    }
    e.lhs = layer;
    if (mode == LayerGrowthMode::full) {
      if (!in_complement_of_b0) {
        e.skipped = true;  // hypothesis A cap closed B0 = empty fails
      } else {
        e.rhs = (1.0 - std::exp(-I * t)) * mass_a;
        e.pass = e.lhs >= e.rhs - 1e-12 * mass_a;
      }
    } else {
      if (!b0_part_in_layer) {
        e.skipped = true;  // hypothesis A cap closed B0 inside A_t fails at this t
      } else {
        e.rhs = 0.5 * (1.0 - std::exp(-I * t / 2.0)) * mass_a;
        e.pass = e.lhs >= e.rhs - 1e-12 * mass_a;
      }
    }
    if (!e.skipped && !e.pass) rep.all_pass = false;
    rep.entries.push_back(e);
  }
  return rep;
}

ComplementDecay verify_complement_decay(const FiniteSpace& space, int x,
                                        const std::vector<double>& r_grid,
                                        double mass_floor) {
  const VectorXd row = space.distances_from(x);
  const double total = space.total_mass();
  std::vector<double> rs, logs;
  for (double r : r_grid) {
    double comp = 0.0;
    for (int p = 0; p < space.size(); ++p)
      if (row[p] > r) comp += space.mass(p);
    if (comp > mass_floor * total) {
      rs.push_back(r);
      logs.push_back(std::log(comp));
    }
  }
  require(rs.size() >= 3, "not enough usable radii for the decay fit");

  // ordinary least squares on log mass
  const auto n = static_cast<double>(rs.size());
  double sr = 0, sl = 0, srr = 0, srl = 0, sll = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    sr += rs[i];
    sl += logs[i];
    srr += rs[i] * rs[i];
    srl += rs[i] * logs[i];
    sll += logs[i] * logs[i];
  }
  const double slope = (n * srl - sr * sl) / (n * srr - sr * sr);
  const double intercept = (sl - slope * sr) / n;

  ComplementDecay fit;
  fit.rate = -slope;
  fit.C = std::exp(intercept);
  fit.r_min = rs.front();
  fit.r_max = rs.back();
  fit.points_used = static_cast<int>(rs.size());
  double ss_res = 0, ss_tot = 0;
  const double mean_l = sl / n;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double pred = intercept + slope * rs[i];
    ss_res += (logs[i] - pred) * (logs[i] - pred);
    ss_tot += (logs[i] - mean_l) * (logs[i] - mean_l);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

namespace {

double best_disjoint_mass(const std::vector<std::vector<int>>& members,
                          const std::vector<double>& masses, std::size_t i,
                          std::vector<char>& used, int n) {
  if (i == members.size()) return 0.0;
  // skip cube i
  double best = best_disjoint_mass(members, masses, i + 1, used, n);
  // take cube i if disjoint from the current selection
  bool ok = true;
  for (int p : members[i])
    if (used[p]) {
      ok = false;
      break;
    }
  if (ok) {
    for (int p : members[i]) used[p] = 1;
    best = std::max(best, masses[i] + best_disjoint_mass(members, masses, i + 1, used, n));
    for (int p : members[i]) used[p] = 0;
  }
  return best;
}

}  // namespace

CoveringSelection covering_select(const FiniteSpace& space, const DyadicCubeTree& tree,
                                  const std::vector<int>& A, double kappa,
                                  const Ball& b0, int nu, double I) {
  require(nu >= tree.k_min && nu <= tree.k_max, "nu outside the tree levels");
  const int n = space.size();
  std::vector<char> in_a(n, 0);
  for (int p : A) in_a[p] = 1;

  // hypothesis: the part of A inside closed B0 lies in the kappa-layer
  {
    const VectorXd b0_row = space.distances_from(b0.center);
    const auto d = dist_to_complement(space, A);
    for (std::size_t i = 0; i < A.size(); ++i)
      require(b0_row[A[i]] > b0.radius || d[i] <= kappa,
              "A cap closed B0 must lie inside the kappa-layer");
  }

  // candidates: cubes of resolution >= nu fully inside A
  std::vector<int> candidates;
  for (const auto& q : tree.cubes) {
    if (q.level < nu) continue;
    bool inside = true;
    for (int p : q.members)
      if (!in_a[p]) {
        inside = false;
        break;
      }
    if (inside) candidates.push_back(q.id);
  }

  // A must be exactly a union of candidates
  {
    std::vector<char> covered(n, 0);
    for (int cid : candidates)
      for (int p : tree.cubes[cid].members) covered[p] = 1;
    for (int p : A)
      require(covered[p] == 1,
              "A is not a union of tree cubes at resolution >= nu");
  }

  // distance from each candidate cube to A^c
  std::vector<int> comp;
  for (int p = 0; p < n; ++p)
    if (!in_a[p]) comp.push_back(p);
  std::vector<double> cube_dist(candidates.size());
  parallel_for(0, static_cast<int>(candidates.size()), [&](int i) {
    double best = std::numeric_limits<double>::infinity();
    for (int p : tree.cubes[candidates[i]].members) {
      const VectorXd row = space.distances_from(p);
      for (int q : comp) best = std::min(best, row[q]);
    }
    cube_dist[i] = best;
  });

  // keep only cubes within kappa of the complement, sort by that distance
  std::vector<int> order;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (cube_dist[i] <= kappa) order.push_back(static_cast<int>(i));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (cube_dist[a] != cube_dist[b]) return cube_dist[a] < cube_dist[b];
    return candidates[a] < candidates[b];
  });

  double mass_a = 0.0;
  for (int p : A) mass_a += space.mass(p);

  CoveringSelection sel;
  sel.sigma = (1.0 - std::exp(-I * kappa / 2.0)) / 4.0;
  sel.bound = sel.sigma * mass_a;

  std::vector<char> used(n, 0);
  for (int oi : order) {
    const auto& q = tree.cubes[candidates[oi]];
    bool ok = true;
    for (int p : q.members)
      if (used[p]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int p : q.members) used[p] = 1;
    sel.cube_ids.push_back(q.id);
    double m = 0.0;
    for (int p : q.members) m += space.mass(p);
    sel.mass_sum += m;
  }
  sel.meets_bound = sel.mass_sum >= sel.bound - 1e-12 * mass_a;

  if (!sel.meets_bound && order.size() <= 20) {
    std::vector<std::vector<int>> members;
    std::vector<double> masses;
    for (int oi : order) {
      members.push_back(tree.cubes[candidates[oi]].members);
      double m = 0.0;
      for (int p : members.back()) m += space.mass(p);
      masses.push_back(m);
    }
    std::vector<char> scratch(n, 0);
    sel.exhaustive_used = true;
    sel.exhaustive_best = best_disjoint_mass(members, masses, 0, scratch, n);
    sel.meets_bound = sel.exhaustive_best >= sel.bound - 1e-12 * mass_a;
  }
  return sel;
}

nlohmann::json IsoperimetryReport::to_json() const {
  return {{"b0", {{"center", b0.center}, {"radius", b0.radius}}},
          {"kappa_grid", kappa_grid},
          {"C_t", c_curve},
          {"I_hat", I_hat},
          {"kappa0_empirical", kappa0_empirical},
          {"sets_tested", sets_tested},
          {"argmin_set", argmin_set},
          {"argmin_kappa", argmin_kappa}};
}

nlohmann::json LayerGrowthReport::to_json() const {
  nlohmann::json entries_json = nlohmann::json::array();
  for (const auto& e : entries)
    entries_json.push_back({{"t", e.t},
                            {"lhs", e.lhs},
                            {"rhs", e.rhs},
                            {"skipped", e.skipped},
                            {"pass", e.pass}});
  return {{"mode", mode == LayerGrowthMode::full ? "full" : "half"},
          {"entries", std::move(entries_json)},
          {"all_pass", all_pass}};
}

nlohmann::json ComplementDecay::to_json() const {
  return {{"C", C},      {"rate", rate},          {"r_min", r_min},
          {"r_max", r_max}, {"points_used", points_used}, {"r2", r2}};
}

nlohmann::json CoveringSelection::to_json() const {
  return {{"cubes", cube_ids},
          {"mass_sum", mass_sum},
          {"bound", bound},
          {"sigma", sigma},
          {"meets_bound", meets_bound},
          {"exhaustive_used", exhaustive_used},
          {"exhaustive_best", exhaustive_best}};
}

}  // namespace mms
