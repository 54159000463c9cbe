#include "mms/grid.hpp"

#include <cmath>
#include <queue>

namespace mms {

UniformGrid UniformGrid::make(const Box& box, double h) {
  require(box.valid(), "degenerate box");
  require(h > 0, "grid step must be positive");
  UniformGrid g;
  g.h = h;
  const int d = box.dim();
  require(d <= 3, "grid graphs support dimension <= 3");
  g.dims.resize(d);
  g.count = 1;
  for (int k = 0; k < d; ++k) {
    g.dims[k] = static_cast<int>(std::floor((box.hi[k] - box.lo[k]) / h + 1e-9)) + 1;
    require(g.dims[k] >= 2, "box shorter than one grid step");
    g.count *= g.dims[k];
  }
  g.strides.resize(d);
  std::int64_t s = 1;
  for (int k = d - 1; k >= 0; --k) {
    g.strides[k] = s;
    s *= g.dims[k];
  }
  g.box.lo = box.lo;
  g.box.hi = box.lo;
  for (int k = 0; k < d; ++k) g.box.hi[k] += h * (g.dims[k] - 1);
  return g;
}

VectorXd UniformGrid::node(std::int64_t i) const {
  const auto mi = multi_index(i);
  VectorXd x(dim());
  for (int k = 0; k < dim(); ++k) x[k] = box.lo[k] + h * mi[k];
  return x;
}

std::vector<int> UniformGrid::multi_index(std::int64_t i) const {
  std::vector<int> mi(dim());
  for (int k = 0; k < dim(); ++k) {
    mi[k] = static_cast<int>(i / strides[k]);
    i -= static_cast<std::int64_t>(mi[k]) * strides[k];
  }
  return mi;
}

std::int64_t UniformGrid::flat_index(const std::vector<int>& mi) const {
  std::int64_t i = 0;
  for (int k = 0; k < dim(); ++k) i += static_cast<std::int64_t>(mi[k]) * strides[k];
  return i;
}

std::int64_t UniformGrid::nearest(const VectorXd& x) const {
  std::vector<int> mi(dim());
  for (int k = 0; k < dim(); ++k) {
    int i = static_cast<int>(std::llround((x[k] - box.lo[k]) / h));
    mi[k] = std::min(std::max(i, 0), dims[k] - 1);
  }
  return flat_index(mi);
}

GridMetric GridMetric::make(const WeightSpec& spec, const Box& box, double h) {
  GridMetric gm;
  gm.grid_ = UniformGrid::make(box, h);
  require(spec.dimension() == gm.grid_.dim(), "weight/box dimension mismatch");
  gm.m_.resize(gm.grid_.count);
  for (std::int64_t i = 0; i < gm.grid_.count; ++i)
    gm.m_[i] = spec.conformal(gm.grid_.node(i));
  const int d = gm.grid_.dim();
  std::vector<int> off(d, -1);
  for (;;) {
    bool zero = true;
    for (int k = 0; k < d; ++k) zero = zero && off[k] == 0;
    if (!zero) {
      gm.offsets_.push_back(off);
      double l2 = 0.0;
      for (int k = 0; k < d; ++k) l2 += static_cast<double>(off[k]) * off[k];
      gm.offset_len_.push_back(h * std::sqrt(l2));
    }
    int k = d - 1;
    for (; k >= 0; --k) {
      if (++off[k] <= 1) break;
      off[k] = -1;
    }
    if (k < 0) break;
  }
  return gm;
}

double GridMetric::second_difference_bound() const {
  double worst = 0.0;
  const int d = grid_.dim();
  for (std::int64_t i = 0; i < grid_.count; ++i) {
    const auto mi = grid_.multi_index(i);
    for (int k = 0; k < d; ++k) {
      if (mi[k] == 0 || mi[k] == grid_.dims[k] - 1) continue;
      const double up = m_[i + grid_.strides[k]];
      const double dn = m_[i - grid_.strides[k]];
      worst = std::max(worst, std::abs(up - 2.0 * m_[i] + dn) / (grid_.h * grid_.h));
    }
  }
  return worst;
}

VectorXd dijkstra(const GridMetric& g, std::int64_t source, double limit) {
  const std::int64_t n = g.size();
  require(source >= 0 && source < n, "dijkstra source out of range");
  VectorXd dist = VectorXd::Constant(n, kUnreached);
  using Item = std::pair<double, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    if (du > limit) break;
    g.for_each_neighbor(u, [&](std::int64_t v, double w) {
      const double dv = du + w;
      if (dv < dist[v]) {
        dist[v] = dv;
        heap.emplace(dv, v);
      }
    });
  }
  if (std::isfinite(limit)) {
    for (std::int64_t i = 0; i < n; ++i)
      if (dist[i] > limit) dist[i] = kUnreached;
  }
  return dist;
}

}  // namespace mms
