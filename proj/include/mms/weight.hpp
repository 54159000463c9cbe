#ifndef MMS_WEIGHT_HPP
#define MMS_WEIGHT_HPP

#include "mms/core.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace mms {

enum class WeightFamily { power, gaussian, linear_combination, tabulated };

std::string to_string(WeightFamily f);
WeightFamily weight_family_from_string(const std::string& s);

struct PowerTerm {
  double alpha;
  double coeff;
};

/// A weight function phi on R^d together with the conformal factor
/// m = 1 + |grad phi| it induces.
///
/// Families:
///   power(alpha)        phi(x) = |x|^alpha, alpha > 0
///   gaussian            phi(x) = |x|^2 (the Gauss-measure weight)
///   linear_combination  phi(x) = sum_i c_i |x|^{alpha_i}; no terms means phi == 0
///   tabulated           phi sampled on a uniform grid, multilinear interpolation,
///                       derivatives by central differences
///
/// phi and |grad phi| are evaluable everywhere; the Hessian is meaningful for
/// |x| >= tau0 (radial profiles r^alpha with alpha < 2 kink at the origin).
class WeightSpec {
 public:
  static WeightSpec power(int dimension, double alpha);
  static WeightSpec gaussian(int dimension);
  static WeightSpec linear_combination(int dimension, std::vector<PowerTerm> terms);
  static WeightSpec constant(int dimension);  // phi == 0
  static WeightSpec tabulated(Box box, double h, VectorXd node_values);

  WeightFamily family() const { return family_; }
  int dimension() const { return dimension_; }
  double tau0() const { return tau0_; }
  void set_tau0(double t) { tau0_ = t; }
  double alpha() const { return alpha_; }
  const std::vector<PowerTerm>& terms() const { return terms_; }

  double phi(const VectorXd& x) const;
  VectorXd grad_phi(const VectorXd& x) const;
  /// |grad phi|(x); at a radial kink this is the limit along a ray.
  double grad_norm(const VectorXd& x) const;
  MatrixXd hess_phi(const VectorXd& x) const;
  /// m(x) = 1 + |grad phi(x)| >= 1.
  double conformal(const VectorXd& x) const;
  /// Radial derivative (x/|x|) . grad phi; 0 at the origin.
  double radial_derivative(const VectorXd& x) const;

  nlohmann::json to_json() const;
  static WeightSpec from_json(const nlohmann::json& j);

  void hash_into(Fnv1a& h) const;

 private:
  WeightSpec() = default;

  // radial profile F with phi(x) = F(|x|) for the closed-form families
  double radial_value(double r) const;
  double radial_d1(double r) const;
  double radial_d2(double r) const;

  double table_at(const VectorXd& x) const;

  WeightFamily family_ = WeightFamily::linear_combination;
  int dimension_ = 1;
  double tau0_ = 0.0;
  double alpha_ = 0.0;
  std::vector<PowerTerm> terms_;

  Box table_box_;
  double table_h_ = 0.0;
  std::vector<int> table_dims_;
  VectorXd table_values_;
};

}  // namespace mms

#endif
