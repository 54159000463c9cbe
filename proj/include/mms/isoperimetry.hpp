#ifndef MMS_ISOPERIMETRY_HPP
#define MMS_ISOPERIMETRY_HPP

#include "mms/cubes.hpp"
#include "mms/space.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace mms {

struct Ball {
  int center = -1;
  double radius = 0.0;
};

/// Smallest closed ball at the mass mode holding more than half the total mass.
Ball default_b0(const FiniteSpace& space);

struct BoundaryLayers {
  std::vector<int> inner;  // A_kappa: rho(x, A^c) <= kappa
  std::vector<int> deep;   // A^kappa: rho(x, A^c) > kappa
};

/// Splits A into its kappa-boundary layer and deep interior.
/// Throws if A is empty or the complement is empty.
BoundaryLayers boundary_layer(const FiniteSpace& space, const std::vector<int>& A,
                              double kappa);

/// Distance to the complement per point of A.
std::vector<double> dist_to_complement(const FiniteSpace& space,
                                       const std::vector<int>& A);

struct TestSet {
  std::string name;
  std::vector<int> points;
};

struct IsoperimetryReport {
  Ball b0;
  std::vector<double> kappa_grid;
  std::vector<double> c_curve;   // C_t per grid value: cumulative inf of ratios
  double I_hat = 0.0;            // sup of the curve = value at the smallest t
  double kappa0_empirical = 0.0; // largest t with C_t > 0
  int sets_tested = 0;
  std::string argmin_set;
  double argmin_kappa = 0.0;

  nlohmann::json to_json() const;
};

/// Empirical complementary isoperimetric constant over a finite family of
/// test sets avoiding closed B0: C_t = inf over sets and kappa <= t of
/// mu(A_kappa) / (kappa mu(A)). An upper bound for the true constant.
IsoperimetryReport estimate_isoperimetric(const FiniteSpace& space, const Ball& b0,
                                          const std::vector<TestSet>& family,
                                          const std::vector<double>& kappa_grid);

/// Deterministic test families: metric annuli around B0, coordinate slabs,
/// and unions of dyadic cubes at two levels (seeded), all avoiding closed B0.
std::vector<TestSet> make_test_family(const FiniteSpace& space, const Ball& b0,
                                      const std::vector<std::string>& kinds,
                                      const DyadicCubeTree* tree = nullptr,
                                      unsigned seed = 1);

enum class LayerGrowthMode { full, half };

struct LayerGrowthEntry {
  double t = 0.0;
  double lhs = 0.0;   // mu(A_t)
  double rhs = 0.0;   // (1 - e^{-I t}) mu(A), halved in half mode
  bool skipped = false;
  bool pass = true;
};

struct LayerGrowthReport {
  LayerGrowthMode mode = LayerGrowthMode::full;
  std::vector<LayerGrowthEntry> entries;
  bool all_pass = true;

  nlohmann::json to_json() const;
};

/// mu(A_t) >= (1 - e^{-I t}) mu(A) for sets avoiding closed B0 (full mode) or
/// the halved bound under the hypothesis A cap closed B0 inside A_t (half mode,
/// hypothesis failures are skipped with a note).
LayerGrowthReport verify_layer_growth(const FiniteSpace& space, const Ball& b0,
                                      const std::vector<int>& A, double I,
                                      const std::vector<double>& t_grid,
                                      LayerGrowthMode mode);

struct ComplementDecay {
  double C = 0.0;
  double rate = 0.0;  // fitted exponent in mu(B(x,r)^c) ~ C e^{-rate r}
  double r_min = 0.0, r_max = 0.0;
  int points_used = 0;
  double r2 = 0.0;    // fit quality

  nlohmann::json to_json() const;
};

/// Least-squares fit of log mu(B(x,r)^c) against r; radii with relative
/// complement mass below mass_floor are dropped.
ComplementDecay verify_complement_decay(const FiniteSpace& space, int x,
                                        const std::vector<double>& r_grid,
                                        double mass_floor = 1e-12);

struct CoveringSelection {
  std::vector<int> cube_ids;
  double mass_sum = 0.0;
  double bound = 0.0;        // (1 - e^{-I kappa / 2}) mu(A) / 4
  double sigma = 0.0;        // bound / mu(A)
  bool meets_bound = false;
  bool exhaustive_used = false;
  double exhaustive_best = -1.0;  // best disjoint mass when the fallback ran

  nlohmann::json to_json() const;
};

/// Disjoint cubes of resolution >= nu inside A, each within kappa of A^c,
/// by greedy nearest-to-boundary selection with an exhaustive fallback for
/// small candidate counts. A must be exactly a union of tree cubes.
CoveringSelection covering_select(const FiniteSpace& space, const DyadicCubeTree& tree,
                                  const std::vector<int>& A, double kappa,
                                  const Ball& b0, int nu, double I);

}  // namespace mms

#endif
