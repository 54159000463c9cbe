#ifndef MMS_QUADRATURE_HPP
#define MMS_QUADRATURE_HPP

#include "mms/core.hpp"

#include <functional>

namespace mms {

using ScalarFn = std::function<double(double)>;
using FieldFn = std::function<double(const VectorXd&)>;

/// Midpoint rule on [a, b] with cells of width <= resolution.
double integrate_midpoint(const ScalarFn& f, double a, double b, double resolution);

/// Midpoint rule over a box with cubic cells of side <= resolution.
/// Cell count grows like (extent/resolution)^d; intended for d <= 3.
double integrate_box_midpoint(const FieldFn& f, const Box& box, double resolution);

/// \int_a^b g(r) r^{d-1} dr by midpoint rule. g is evaluated in log space
/// when log_space is set, so integrands like e^{psi} stay finite longer.
double integrate_radial_midpoint(const ScalarFn& log_g, int d, double a, double b,
                                 double resolution);

/// \int_a^inf g(r) r^{d-1} dr for integrands with eventually decreasing mass:
/// extends the upper limit in blocks until a block adds less than
/// rel_tail of the accumulated value.
double integrate_radial_tail(const ScalarFn& log_g, int d, double a, double block,
                             double resolution, double rel_tail = 1e-12);

}  // namespace mms

#endif
