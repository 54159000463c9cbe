#ifndef MMS_WEIGHT_CHECKS_HPP
#define MMS_WEIGHT_CHECKS_HPP

#include "mms/core.hpp"
#include "mms/quadrature.hpp"
#include "mms/weight.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <vector>

namespace mms {

struct TamenessReport {
  double radius = 0.0;           // R
  double constant = 1.0;         // empirical sup of m(x)/m(y) over |x-y| < R
  double constant_half_domain = 1.0;  // same sup on the half-scaled box
  bool analytic_criterion = false;    // sup |grad m| / m^alpha stable for some alpha in [0,1]
  double best_alpha = 0.0;
  double criterion_ratio = 0.0;  // full-domain sup / half-domain sup at best_alpha
  bool tame = false;
  std::int64_t pairs = 0;

  nlohmann::json to_json() const;
};

/// Empirical tameness of m = 1 + |grad phi| at separation R: samples grid
/// pairs with |x-y| < R on `domain` and on its half-scaled copy. The verdict
/// combines the gradient criterion with stability of C(R) across the two
/// scales; an unbounded-ratio weight fails both.
TamenessReport check_tame(const WeightSpec& spec, double R, const Box& domain,
                          int sample_count);

struct AdmissibilityReport {
  bool tame = false;
  bool gradient_diverges = false;
  double hessian_ratio_tail = 0.0;  // max |Hess phi| / |grad phi|^2 on the shell
  double radial_ratio_floor = 0.0;  // min d_r phi / |grad phi| on the shell
  bool hessian_ok = false;          // tail < hessian_threshold
  bool radial_ok = false;           // floor > radial_threshold
  bool admissible = false;
  double shell_radius = 0.0;

  nlohmann::json to_json() const;
};

struct AdmissibilityThresholds {
  double hessian_tail = 0.1;   // "ratio vanishes" at desk scale
  double radial_floor = 0.05;  // "liminf > 0" at desk scale
  double divergence_growth = 1.1;
  double divergence_min = 1.0;
};

/// Checks the four admissibility conditions on the shell
/// {shell_radius <= |x| <= 2 shell_radius}. Throws if the shell starts
/// inside the smoothness radius tau0.
AdmissibilityReport check_admissible(const WeightSpec& spec, const Box& domain,
                                     double shell_radius,
                                     const AdmissibilityThresholds& thr = {});

struct Region {
  Box box;
  // optional Euclidean ball constraint intersected with the box
  std::optional<VectorXd> ball_center;
  double ball_radius = 0.0;
};

/// Mass of the region under d mu = e^{sign * phi} d lambda, by midpoint rule.
double weighted_mass(const WeightSpec& spec, int sign, const Region& region,
                     double quadrature_resolution);

enum class TailDirection { lower, upper };

struct IntegralLemmaResult {
  double best_constant = 0.0;
  double worst_tau = 0.0;
  double worst_a = 0.0;
  std::int64_t evaluated = 0;
};

/// Measures the best constant C in the radial comparison
///   lower: int_tau^{tau+a h(tau)} e^{psi} r^{d-1} dr >= C a int_0^{tau+a h(tau)} ...
///   upper: int_{tau-a h(tau)}^tau e^{-psi} r^{d-1} dr >= C a int_{tau-a h(tau)}^inf ...
/// over the given grids; a = 0 entries are skipped. For the upper tail,
/// taus below T are skipped.
IntegralLemmaResult verify_integral_lemma(const ScalarFn& psi, const ScalarFn& h, int d,
                                          TailDirection direction,
                                          const std::vector<double>& tau_grid,
                                          const std::vector<double>& a_grid,
                                          double quad_resolution = 1e-4,
                                          double T = 0.0);

}  // namespace mms

#endif
