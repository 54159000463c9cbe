#ifndef MMS_GRID_HPP
#define MMS_GRID_HPP

#include "mms/core.hpp"
#include "mms/weight.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace mms {

/// Uniform node grid over a box. Node k has coordinate lo + multi(k)*h;
/// the last axis varies fastest. The box upper corner snaps to the last node.
struct UniformGrid {
  Box box;
  double h = 0.0;
  std::vector<int> dims;
  std::vector<std::int64_t> strides;
  std::int64_t count = 0;

  static UniformGrid make(const Box& box, double h);

  VectorXd node(std::int64_t i) const;
  std::vector<int> multi_index(std::int64_t i) const;
  std::int64_t flat_index(const std::vector<int>& mi) const;
  std::int64_t nearest(const VectorXd& x) const;
  int dim() const { return static_cast<int>(dims.size()); }
};

/// Grid graph with 3^d - 1 stencil edges, weighted by the conformal length
/// element: w(i,j) = |x_i - x_j| * (m(x_i) + m(x_j)) / 2.
class GridMetric {
 public:
  static GridMetric make(const WeightSpec& spec, const Box& box, double h);

  const UniformGrid& grid() const { return grid_; }
  const VectorXd& conformal() const { return m_; }
  std::int64_t size() const { return grid_.count; }

  /// Visit the stencil neighbors of node i with their edge weights.
  template <typename Fn>
  void for_each_neighbor(std::int64_t i, Fn&& fn) const {
    const auto mi = grid_.multi_index(i);
    const int d = grid_.dim();
    for (std::size_t o = 0; o < offsets_.size(); ++o) {
      std::int64_t j = i;
      bool ok = true;
      for (int k = 0; k < d; ++k) {
        const int nk = mi[k] + offsets_[o][k];
        if (nk < 0 || nk >= grid_.dims[k]) {
          ok = false;
          break;
        }
        j += static_cast<std::int64_t>(offsets_[o][k]) * grid_.strides[k];
      }
      if (!ok) continue;
      fn(j, 0.5 * (m_[i] + m_[j]) * offset_len_[o]);
    }
  }

  /// Largest second difference of m over the grid, per unit length squared.
  /// Used for trapezoid-error accounting in geodesic bounds.
  double second_difference_bound() const;

 private:
  UniformGrid grid_;
  VectorXd m_;
  std::vector<std::vector<int>> offsets_;
  std::vector<double> offset_len_;
};

constexpr double kUnreached = std::numeric_limits<double>::infinity();

/// Single-source shortest path on the grid graph. Nodes farther than `limit`
/// keep distance kUnreached.
VectorXd dijkstra(const GridMetric& g, std::int64_t source,
                  double limit = std::numeric_limits<double>::infinity());

}  // namespace mms

#endif
