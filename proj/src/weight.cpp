#include "mms/weight.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace mms {

std::string to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::power: return "power";
    case WeightFamily::gaussian: return "gaussian";
    case WeightFamily::linear_combination: return "linear-combination";
    case WeightFamily::tabulated: return "tabulated-on-grid";
  }
  return "?";
}

WeightFamily weight_family_from_string(const std::string& s) {
  if (s == "power") return WeightFamily::power;
  if (s == "gaussian") return WeightFamily::gaussian;
  if (s == "linear-combination") return WeightFamily::linear_combination;
  if (s == "tabulated-on-grid") return WeightFamily::tabulated;
  throw std::invalid_argument("unknown weight family: " + s);
}

WeightSpec WeightSpec::power(int dimension, double alpha) {
  require(dimension >= 1, "dimension must be >= 1");
  require(alpha > 0, "power family needs alpha > 0");
  WeightSpec w;
  w.family_ = WeightFamily::power;
  w.dimension_ = dimension;
  w.alpha_ = alpha;
  w.tau0_ = alpha >= 2.0 ? 0.0 : 1.0;
  return w;
}

WeightSpec WeightSpec::gaussian(int dimension) {
  require(dimension >= 1, "dimension must be >= 1");
  WeightSpec w;
  w.family_ = WeightFamily::gaussian;
  w.dimension_ = dimension;
  w.tau0_ = 0.0;
  return w;
}

WeightSpec WeightSpec::linear_combination(int dimension, std::vector<PowerTerm> terms) {
  require(dimension >= 1, "dimension must be >= 1");
  WeightSpec w;
  w.family_ = WeightFamily::linear_combination;
  w.dimension_ = dimension;
  w.terms_ = std::move(terms);
  double t = 0.0;
  for (const auto& term : w.terms_) {
    require(term.alpha > 0, "linear combination terms need alpha > 0");
    if (term.alpha < 2.0) t = 1.0;
  }
  w.tau0_ = t;
  return w;
}

WeightSpec WeightSpec::constant(int dimension) {
  return linear_combination(dimension, {});
}

WeightSpec WeightSpec::tabulated(Box box, double h, VectorXd node_values) {
  require(box.valid(), "degenerate table box");
  require(h > 0, "table step must be positive");
  WeightSpec w;
  w.family_ = WeightFamily::tabulated;
  w.dimension_ = box.dim();
  w.table_box_ = box;
  w.table_h_ = h;
  w.table_dims_.resize(box.dim());
  std::int64_t expect = 1;
  for (int k = 0; k < box.dim(); ++k) {
    w.table_dims_[k] = static_cast<int>(std::llround((box.hi[k] - box.lo[k]) / h)) + 1;
    require(w.table_dims_[k] >= 2, "table needs at least two nodes per axis");
    expect *= w.table_dims_[k];
  }
  require(node_values.size() == expect, "table value count does not match grid");
  w.table_values_ = std::move(node_values);
  w.tau0_ = 0.0;
  return w;
}

double WeightSpec::radial_value(double r) const {
  switch (family_) {
    case WeightFamily::power: return std::pow(r, alpha_);
    case WeightFamily::gaussian: return r * r;
    case WeightFamily::linear_combination: {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.coeff * std::pow(r, t.alpha);
      return acc;
    }
    case WeightFamily::tabulated: break;
  }
  throw std::logic_error("radial_value on tabulated family");
}

double WeightSpec::radial_d1(double r) const {
  switch (family_) {
    case WeightFamily::power:
      return alpha_ * std::pow(r, alpha_ - 1.0);
    case WeightFamily::gaussian:
      return 2.0 * r;
    case WeightFamily::linear_combination: {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.coeff * t.alpha * std::pow(r, t.alpha - 1.0);
      return acc;
    }
    case WeightFamily::tabulated: break;
  }
  throw std::logic_error("radial_d1 on tabulated family");
}

double WeightSpec::radial_d2(double r) const {
  switch (family_) {
    case WeightFamily::power:
      return alpha_ * (alpha_ - 1.0) * std::pow(r, alpha_ - 2.0);
    case WeightFamily::gaussian:
      return 2.0;
    case WeightFamily::linear_combination: {
      double acc = 0.0;
      for (const auto& t : terms_)
        acc += t.coeff * t.alpha * (t.alpha - 1.0) * std::pow(r, t.alpha - 2.0);
      return acc;
    }
    case WeightFamily::tabulated: break;
  }
  throw std::logic_error("radial_d2 on tabulated family");
}

double WeightSpec::table_at(const VectorXd& x) const {
  const int d = dimension_;
  // clamp to the table box; outside queries continue the boundary value
  std::vector<int> base(d);
  std::vector<double> frac(d);
  for (int k = 0; k < d; ++k) {
    double u = (x[k] - table_box_.lo[k]) / table_h_;
    u = std::min(std::max(u, 0.0), static_cast<double>(table_dims_[k] - 1));
    int i = std::min(static_cast<int>(u), table_dims_[k] - 2);
    base[k] = i;
    frac[k] = u - static_cast<double>(i);
  }
  double acc = 0.0;
  const int corners = 1 << d;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::int64_t idx = 0;
    for (int k = 0; k < d; ++k) {
      const int bit = (c >> k) & 1;
      w *= bit ? frac[k] : 1.0 - frac[k];
      idx = idx * table_dims_[k] + (base[k] + bit);
    }
    acc += w * table_values_[idx];
  }
  return acc;
}

double WeightSpec::phi(const VectorXd& x) const {
  require(x.size() == dimension_, "point dimension mismatch");
  if (family_ == WeightFamily::tabulated) return table_at(x);
  return radial_value(x.norm());
}

VectorXd WeightSpec::grad_phi(const VectorXd& x) const {
  require(x.size() == dimension_, "point dimension mismatch");
  if (family_ == WeightFamily::tabulated) {
    VectorXd g(dimension_);
    VectorXd xe = x;
    for (int k = 0; k < dimension_; ++k) {
      const double h = table_h_;
      xe[k] = x[k] + h;
      const double up = table_at(xe);
      xe[k] = x[k] - h;
      const double dn = table_at(xe);
      xe[k] = x[k];
      g[k] = (up - dn) / (2.0 * h);
    }
    return g;
  }
  const double r = x.norm();
  if (r == 0.0) return VectorXd::Zero(dimension_);
  return (radial_d1(r) / r) * x;
}

double WeightSpec::grad_norm(const VectorXd& x) const {
  if (family_ == WeightFamily::tabulated) return grad_phi(x).norm();
  const double r = x.norm();
  // at the origin: limit of |F'| along a ray (infinite for exponents < 1)
  return std::abs(radial_d1(r == 0.0 ? 1e-14 : r));
}

MatrixXd WeightSpec::hess_phi(const VectorXd& x) const {
  require(x.size() == dimension_, "point dimension mismatch");
  const int d = dimension_;
  if (family_ == WeightFamily::tabulated) {
    MatrixXd h = MatrixXd::Zero(d, d);
    const double s = table_h_;
    VectorXd xe = x;
    for (int i = 0; i < d; ++i) {
      xe[i] = x[i] + s;
      const double up = table_at(xe);
      xe[i] = x[i] - s;
      const double dn = table_at(xe);
      xe[i] = x[i];
      h(i, i) = (up - 2.0 * table_at(x) + dn) / (s * s);
      for (int j = i + 1; j < d; ++j) {
        VectorXd y = x;
        y[i] += s; y[j] += s; const double pp = table_at(y);
        y[j] -= 2 * s;        const double pm = table_at(y);
        y[i] -= 2 * s;        const double mm = table_at(y);
        y[j] += 2 * s;        const double mp = table_at(y);
        h(i, j) = h(j, i) = (pp - pm - mp + mm) / (4.0 * s * s);
      }
    }
    return h;
  }
  const double r = x.norm();
  require(r >= tau0_ || tau0_ == 0.0, "Hessian requested inside smoothness radius");
  if (r == 0.0) {
    return radial_d2(0.0) * MatrixXd::Identity(d, d);
  }
  const VectorXd u = x / r;
  const MatrixXd proj = u * u.transpose();
  return radial_d2(r) * proj + (radial_d1(r) / r) * (MatrixXd::Identity(d, d) - proj);
}

double WeightSpec::conformal(const VectorXd& x) const { return 1.0 + grad_norm(x); }

double WeightSpec::radial_derivative(const VectorXd& x) const {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return x.dot(grad_phi(x)) / r;
}

nlohmann::json WeightSpec::to_json() const {
  nlohmann::json j;
  j["family"] = to_string(family_);
  j["dimension"] = dimension_;
  j["tau0"] = tau0_;
  switch (family_) {
    case WeightFamily::power:
      j["alpha"] = alpha_;
      break;
    case WeightFamily::gaussian:
      break;
    case WeightFamily::linear_combination: {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : terms_) terms.push_back({{"alpha", t.alpha}, {"coeff", t.coeff}});
      j["terms"] = terms;
      break;
    }
    case WeightFamily::tabulated: {
      j["box"] = {{"lo", std::vector<double>(table_box_.lo.data(),
                                             table_box_.lo.data() + table_box_.lo.size())},
                  {"hi", std::vector<double>(table_box_.hi.data(),
                                             table_box_.hi.data() + table_box_.hi.size())}};
      j["h"] = table_h_;
      j["values"] = std::vector<double>(table_values_.data(),
                                        table_values_.data() + table_values_.size());
      break;
    }
  }
  return j;
}

WeightSpec WeightSpec::from_json(const nlohmann::json& j) {
  const auto family = weight_family_from_string(j.at("family").get<std::string>());
  const int d = j.at("dimension").get<int>();
  WeightSpec w;
  switch (family) {
    case WeightFamily::power:
      w = power(d, j.at("alpha").get<double>());
      break;
    case WeightFamily::gaussian:
      w = gaussian(d);
      break;
    case WeightFamily::linear_combination: {
      std::vector<PowerTerm> terms;
      if (j.contains("terms"))
        for (const auto& t : j.at("terms"))
          terms.push_back({t.at("alpha").get<double>(), t.at("coeff").get<double>()});
      w = linear_combination(d, std::move(terms));
      break;
    }
    case WeightFamily::tabulated: {
      const auto& jb = j.at("box");
      const auto lo = jb.at("lo").get<std::vector<double>>();
      const auto hi = jb.at("hi").get<std::vector<double>>();
      Box box{Eigen::Map<const VectorXd>(lo.data(), lo.size()),
              Eigen::Map<const VectorXd>(hi.data(), hi.size())};
      const auto vals = j.at("values").get<std::vector<double>>();
      w = tabulated(box, j.at("h").get<double>(),
                    Eigen::Map<const VectorXd>(vals.data(), vals.size()));
      break;
    }
  }
  if (j.contains("tau0")) w.tau0_ = j.at("tau0").get<double>();
  return w;
}

void WeightSpec::hash_into(Fnv1a& h) const {
  h.update(to_string(family_));
  h.update(static_cast<std::int64_t>(dimension_));
  h.update(tau0_);
  h.update(alpha_);
  for (const auto& t : terms_) {
    h.update(t.alpha);
    h.update(t.coeff);
  }
  if (family_ == WeightFamily::tabulated) {
    h.update(table_h_);
    h.update(table_box_.lo);
    h.update(table_box_.hi);
    h.update(table_values_);
  }
}

}  // namespace mms
