#include "mms/weight_checks.hpp"

#include "mms/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace mms {

namespace {

// deterministic lattice of sample points, about `count` total
std::vector<VectorXd> lattice_points(const Box& box, int count) {
  const int d = box.dim();
  int per_axis = std::max(2, static_cast<int>(std::round(std::pow(double(count), 1.0 / d))));
  std::vector<VectorXd> pts;
  std::vector<int> idx(d, 0);
  for (;;) {
    VectorXd x(d);
    for (int k = 0; k < d; ++k)
      x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * idx[k] / double(per_axis - 1);
    pts.push_back(x);
    int k = d - 1;
    for (; k >= 0; --k) {
      if (++idx[k] < per_axis) break;
      idx[k] = 0;
    }
    if (k < 0) break;
  }
  return pts;
}

double pair_sup_ratio(const WeightSpec& spec, const std::vector<VectorXd>& pts, double R,
                      std::int64_t* pairs_out) {
  std::vector<double> m(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) m[i] = spec.conformal(pts[i]);
  double sup = 1.0;
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if ((pts[i] - pts[j]).norm() >= R) continue;
      ++pairs;
      if (m[i] > 0 && m[j] > 0)
        sup = std::max(sup, std::max(m[i] / m[j], m[j] / m[i]));
    }
  }
  if (pairs_out) *pairs_out = pairs;
  return sup;
}

// sup over sample of |grad m| / m^alpha, gradient by central differences
double grad_criterion_sup(const WeightSpec& spec, const std::vector<VectorXd>& pts,
                          double alpha, double step) {
  double sup = 0.0;
  const int d = spec.dimension();
  for (const auto& x : pts) {
    VectorXd g(d);
    VectorXd xe = x;
    for (int k = 0; k < d; ++k) {
      xe[k] = x[k] + step;
      const double up = spec.conformal(xe);
      xe[k] = x[k] - step;
      const double dn = spec.conformal(xe);
      xe[k] = x[k];
      g[k] = (up - dn) / (2.0 * step);
    }
    const double m = spec.conformal(x);
    sup = std::max(sup, g.norm() / std::pow(m, alpha));
  }
  return sup;
}

}  // namespace

TamenessReport check_tame(const WeightSpec& spec, double R, const Box& domain,
                          int sample_count) {
  require(R > 0, "tameness radius must be positive");
  require(domain.valid(), "degenerate domain");
  require(sample_count >= 4, "sample count too small");

  TamenessReport rep;
  rep.radius = R;
  const auto pts_full = lattice_points(domain, sample_count);
  const auto pts_half = lattice_points(domain.scaled(0.5), sample_count);
  rep.constant = pair_sup_ratio(spec, pts_full, R, &rep.pairs);
  rep.constant_half_domain = pair_sup_ratio(spec, pts_half, R, nullptr);

  const double step = 1e-3 * domain.extent().minCoeff() /
                      std::max(1.0, std::pow(double(sample_count), 1.0 / domain.dim()));
  double best_ratio = std::numeric_limits<double>::infinity();
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double full = grad_criterion_sup(spec, pts_full, alpha, step);
    const double half = grad_criterion_sup(spec, pts_half, alpha, step);
    const double ratio = full / std::max(half, 1e-12);
    if (ratio < best_ratio) {
      best_ratio = ratio;
      rep.best_alpha = alpha;
      rep.criterion_ratio = ratio;
    }
  }
  rep.analytic_criterion = best_ratio <= 1.25;
  rep.tame = rep.analytic_criterion &&
             rep.constant <= 2.0 * rep.constant_half_domain + 1e-9;
  return rep;
}

nlohmann::json TamenessReport::to_json() const {
  return {{"R", radius},
          {"C", constant},
          {"C_half_domain", constant_half_domain},
          {"analytic_criterion", analytic_criterion},
          {"best_alpha", best_alpha},
          {"criterion_ratio", criterion_ratio},
          {"tame", tame},
          {"pairs", pairs}};
}

AdmissibilityReport check_admissible(const WeightSpec& spec, const Box& domain,
                                     double shell_radius,
                                     const AdmissibilityThresholds& thr) {
  require(shell_radius > spec.tau0(), "shell must start beyond the smoothness radius");
  require(domain.valid(), "degenerate domain");
  const int d = spec.dimension();
  VectorXd corner(d);
  for (int k = 0; k < d; ++k)
    corner[k] = std::min(std::abs(domain.lo[k]), std::abs(domain.hi[k]));
  require(2.0 * shell_radius <= corner.minCoeff(),
          "shell of radius 2*shell_radius must fit inside the domain");

  AdmissibilityReport rep;
  rep.shell_radius = shell_radius;
  rep.tame = check_tame(spec, 1.0, domain, d == 1 ? 512 : (d == 2 ? 1024 : 2197)).tame;

  std::vector<VectorXd> dirs;
  for (int k = 0; k < d; ++k) {
    VectorXd e = VectorXd::Zero(d);
    e[k] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  if (d >= 2) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      VectorXd e(d);
      for (int k = 0; k < d; ++k) e[k] = (mask >> k) & 1 ? 1.0 : -1.0;
      dirs.push_back(e / e.norm());
    }
  }

  const auto min_grad_at = [&](double r) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& e : dirs) mn = std::min(mn, spec.grad_norm(r * e));
    return mn;
  };
  const double inner = min_grad_at(shell_radius);
  const double outer = min_grad_at(2.0 * shell_radius);
  rep.gradient_diverges =
      outer >= thr.divergence_min && outer >= thr.divergence_growth * inner;

  double hess_max = 0.0;
  double radial_min = std::numeric_limits<double>::infinity();
  const int steps = 8;
  for (int s = 0; s <= steps; ++s) {
    const double r = shell_radius * (1.0 + double(s) / steps);
    for (const auto& e : dirs) {
      const VectorXd x = r * e;
      const double gn = spec.grad_norm(x);
      const MatrixXd H = spec.hess_phi(x);
      const double hn = H.operatorNorm();
      if (gn > 0) {
        hess_max = std::max(hess_max, hn / (gn * gn));
        radial_min = std::min(radial_min, spec.radial_derivative(x) / gn);
      } else {
        hess_max = hn > 0 ? std::numeric_limits<double>::infinity() : hess_max;
        radial_min = 0.0;
      }
    }
  }
  rep.hessian_ratio_tail = hess_max;
  rep.radial_ratio_floor = radial_min;
  rep.hessian_ok = hess_max < thr.hessian_tail;
  rep.radial_ok = radial_min > thr.radial_floor;
  rep.admissible = rep.tame && rep.gradient_diverges && rep.hessian_ok && rep.radial_ok;
  return rep;
}

nlohmann::json AdmissibilityReport::to_json() const {
  return {{"tame", tame},
          {"gradient_diverges", gradient_diverges},
          {"hessian_ratio_tail", hessian_ratio_tail},
          {"radial_ratio_floor", radial_ratio_floor},
          {"hessian_ok", hessian_ok},
          {"radial_ok", radial_ok},
          {"admissible", admissible},
          {"shell_radius", shell_radius}};
}

double weighted_mass(const WeightSpec& spec, int sign, const Region& region,
                     double quadrature_resolution) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const FieldFn f = [&](const VectorXd& x) {
    if (region.ball_center &&
        (x - *region.ball_center).norm() > region.ball_radius)
      return 0.0;
    return std::exp(sign * spec.phi(x));
  };
  return integrate_box_midpoint(f, region.box, quadrature_resolution);
}

IntegralLemmaResult verify_integral_lemma(const ScalarFn& psi, const ScalarFn& h, int d,
                                          TailDirection direction,
                                          const std::vector<double>& tau_grid,
                                          const std::vector<double>& a_grid,
                                          double quad_resolution, double T) {
  require(!tau_grid.empty() && !a_grid.empty(), "empty grids");
  IntegralLemmaResult out;
  out.best_constant = std::numeric_limits<double>::infinity();

  for (double tau : tau_grid) {
    if (direction == TailDirection::upper && tau < T) continue;
    const double ht = h(tau);
    require(ht > 0, "h must be positive");
    for (double a : a_grid) {
      if (a <= 0.0) continue;  // both sides vanish at a = 0
      double num = 0.0, den = 0.0;
      if (direction == TailDirection::lower) {
        const double up = tau + a * ht;
        // factor out the max of psi so e^psi stays in range
        double shift = psi(0.0);
        for (int s = 0; s <= 64; ++s) shift = std::max(shift, psi(up * s / 64.0));
        const ScalarFn lg = [&](double r) { return psi(r) - shift; };
        num = integrate_radial_midpoint(lg, d, tau, up, quad_resolution);
        den = a * integrate_radial_midpoint(lg, d, 0.0, up, quad_resolution);
      } else {
        const double lo = std::max(0.0, tau - a * ht);
        const ScalarFn lg = [&](double r) { return -psi(r); };
        num = integrate_radial_midpoint(lg, d, lo, tau, quad_resolution);
        den = a * (num + integrate_radial_tail(lg, d, tau, std::max(1.0, ht),
                                               quad_resolution));
      }
      ++out.evaluated;
      if (den <= 0.0) continue;
      const double c = num / den;
      if (c < out.best_constant) {
        out.best_constant = c;
        out.worst_tau = tau;
        out.worst_a = a;
      }
    }
  }
  require(out.evaluated > 0, "no positive-a grid points to evaluate");
  return out;
}

}  // namespace mms
