#ifndef MMS_CORE_HPP
#define MMS_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mms {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

/// Axis-aligned box in R^d.
struct Box {
  VectorXd lo;
  VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool valid() const {
    return lo.size() == hi.size() && lo.size() > 0 && (hi.array() > lo.array()).all();
  }

  bool contains(const VectorXd& x, double tol = 0.0) const {
    return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
  }

  VectorXd extent() const { return hi - lo; }

  /// Box with the same center scaled by `factor` in every direction.
  Box scaled(double factor) const {
    VectorXd c = 0.5 * (lo + hi);
    VectorXd half = 0.5 * factor * (hi - lo);
    return Box{c - half, c + half};
  }

  static Box cube(int d, double lo_v, double hi_v) {
    return Box{VectorXd::Constant(d, lo_v), VectorXd::Constant(d, hi_v)};
  }
};

/// Indices 0..n-1 sorted by ascending key; equal keys keep index order.
template <typename Keys>
std::vector<int> argsort(const Keys& keys, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  return order;
}

// --- deterministic content hashing for report provenance ---

class Fnv1a {
 public:
  void update(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ull;
    }
  }
  void update(double v) { update(&v, sizeof(v)); }
  void update(std::int64_t v) { update(&v, sizeof(v)); }
  void update(const std::string& s) { update(s.data(), s.size()); }
  template <typename Derived>
  void update(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) update(static_cast<double>(m(i, j)));
  }
  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

// --- threading ---

/// Global worker count for parallel sweeps. 0 = hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Runs f(i) for i in [begin, end). Results must be written to per-index
/// slots; reductions happen after the loop so output stays deterministic.
void parallel_for(int begin, int end, const std::function<void(int)>& f);

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace mms

#endif
