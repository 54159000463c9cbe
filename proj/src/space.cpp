#include "mms/space.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace mms {

namespace {
constexpr char kMagic[8] = {'M', 'M', 'S', 'P', 'A', 'C', 'E', '1'};

void check_masses(const VectorXd& masses) {
  require(masses.size() > 0, "space needs at least one point");
  require((masses.array() > 0).all(), "all masses must be positive");
}
}  // namespace

FiniteSpace FiniteSpace::dense(MatrixXd dist, VectorXd masses, MatrixXd coords) {
  check_masses(masses);
  require(dist.rows() == dist.cols() && dist.rows() == masses.size(),
          "distance matrix shape mismatch");
  FiniteSpace s;
  s.backend_ = Backend::dense;
  s.dist_ = std::move(dist);
  s.coords_ = std::move(coords);
  s.masses_ = std::move(masses);
  s.total_mass_ = s.masses_.sum();
  // symmetry and zero diagonal are structural, not tolerances
  for (int i = 0; i < s.size(); ++i) {
    if (s.dist_(i, i) != 0.0) throw std::invalid_argument("dist(i,i) must be zero");
    for (int j = i + 1; j < s.size(); ++j)
      if (s.dist_(i, j) != s.dist_(j, i) || s.dist_(i, j) < 0.0)
        throw std::invalid_argument("distance matrix must be symmetric and nonnegative");
  }
  return s;
}

FiniteSpace FiniteSpace::euclidean(MatrixXd coords, VectorXd masses) {
  check_masses(masses);
  require(coords.rows() == masses.size() && coords.cols() >= 1,
          "coordinate shape mismatch");
  FiniteSpace s;
  s.backend_ = Backend::euclid;
  s.coords_ = std::move(coords);
  s.masses_ = std::move(masses);
  s.total_mass_ = s.masses_.sum();
  return s;
}

FiniteSpace FiniteSpace::grid_backed(std::shared_ptr<const GridMetric> gm,
                                     VectorXd masses) {
  check_masses(masses);
  require(gm && gm->size() == masses.size(), "grid size mismatch");
  FiniteSpace s;
  s.backend_ = Backend::grid;
  s.grid_ = std::move(gm);
  s.masses_ = std::move(masses);
  s.total_mass_ = s.masses_.sum();
  const auto& grid = s.grid_->grid();
  s.coords_.resize(grid.count, grid.dim());
  for (std::int64_t i = 0; i < grid.count; ++i) s.coords_.row(i) = grid.node(i);
  return s;
}

const MatrixXd& FiniteSpace::dist_matrix() const {
  require(backend_ == Backend::dense, "space has no dense distance matrix");
  return dist_;
}

double FiniteSpace::dist(int i, int j) const {
  switch (backend_) {
    case Backend::dense: return dist_(i, j);
    case Backend::euclid: return (coords_.row(i) - coords_.row(j)).norm();
    case Backend::grid: {
      if (i == j) return 0.0;
      return distances_from(i)[j];
    }
  }
  return 0.0;
}

VectorXd FiniteSpace::distances_from(int i) const {
  switch (backend_) {
    case Backend::dense: return dist_.row(i);
    case Backend::euclid:
      return (coords_.rowwise() - coords_.row(i)).rowwise().norm();
    case Backend::grid: {
      {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->rows.find(i);
        if (it != cache_->rows.end()) return it->second;
      }
      VectorXd row = dijkstra(*grid_, i);
      require(row.maxCoeff() < kUnreached, "grid graph is disconnected");
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto [it, inserted] = cache_->rows.emplace(i, std::move(row));
      return it->second;
    }
  }
  return VectorXd();
}

double FiniteSpace::diameter() const {
  if (diameter_ >= 0.0) return diameter_;
  double d = 0.0;
  if (backend_ == Backend::dense) {
    d = dist_.maxCoeff();
  } else if (backend_ == Backend::euclid) {
    for (int i = 0; i < size(); ++i) {
      const VectorXd row = distances_from(i);
      d = std::max(d, row.maxCoeff());
    }
  } else {
    // double-sweep: exact on path-like graphs, at least diam/2 in general
    const VectorXd from0 = distances_from(0);
    int far0;
    from0.maxCoeff(&far0);
    const VectorXd from_far = distances_from(far0);
    d = from_far.maxCoeff();
  }
  diameter_ = d;
  return d;
}

std::vector<int> FiniteSpace::ball(int center, double r) const {
  const VectorXd row = distances_from(center);
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (row[j] <= r) out.push_back(j);
  return out;
}

double FiniteSpace::ball_mass(int center, double r) const {
  const VectorXd row = distances_from(center);
  double acc = 0.0;
  for (int j = 0; j < size(); ++j)
    if (row[j] <= r) acc += masses_[j];
  return acc;
}

FiniteSpace::TriangleAudit FiniteSpace::triangle_audit(int sample_points,
                                                       double rel_tol) const {
  const int n = size();
  const int stride = std::max(1, n / sample_points);
  const double tol = rel_tol * diameter();
  TriangleAudit audit;
  for (int i = 0; i < n; i += stride) {
    const VectorXd di = distances_from(i);
    for (int j = i + stride; j < n; j += stride) {
      const VectorXd dj = distances_from(j);
      for (int k = 0; k < n; k += stride) {
        const double slack = di[j] - di[k] - dj[k];
        ++audit.checked;
        if (slack > audit.worst) {
          audit.worst = slack;
          audit.i = i;
          audit.j = j;
          audit.k = k;
        }
      }
    }
  }
  audit.ok = audit.worst <= tol;
  return audit;
}

void FiniteSpace::save_binary(const std::string& path) const {
  require(backend_ != Backend::grid,
          "lazy grid space cannot be serialized; materialize a dense space");
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open output file " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::int64_t n = size();
  const std::int64_t d = coords_.cols();
  const std::int64_t has_dense_flag = backend_ == Backend::dense ? 1 : 0;
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&d), 8);
  out.write(reinterpret_cast<const char*>(&has_dense_flag), 8);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t k = 0; k < d; ++k) {
      const double v = coords_(i, k);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  out.write(reinterpret_cast<const char*>(masses_.data()), 8 * n);
  if (has_dense_flag) {
    for (std::int64_t i = 1; i < n; ++i)
      for (std::int64_t j = 0; j < i; ++j) {
        const double v = dist_(i, j);
        out.write(reinterpret_cast<const char*>(&v), 8);
      }
  }
  const std::string meta = metadata.dump();
  const std::int64_t meta_len = static_cast<std::int64_t>(meta.size());
  out.write(reinterpret_cast<const char*>(&meta_len), 8);
  out.write(meta.data(), meta_len);
  require(out.good(), "write failed for " + path);
}

FiniteSpace FiniteSpace::load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open space file " + path);
  char magic[8];
  in.read(magic, 8);
  require(in.good() && std::memcmp(magic, kMagic, 8) == 0,
          "not a space file: " + path);
  std::int64_t n = 0, d = 0, has_dense_flag = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&d), 8);
  in.read(reinterpret_cast<char*>(&has_dense_flag), 8);
  require(in.good() && n > 0 && d >= 0, "corrupt space file");
  MatrixXd coords(n, d);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t k = 0; k < d; ++k) in.read(reinterpret_cast<char*>(&coords(i, k)), 8);
  VectorXd masses(n);
  in.read(reinterpret_cast<char*>(masses.data()), 8 * n);
  FiniteSpace s;
  if (has_dense_flag) {
    MatrixXd dist = MatrixXd::Zero(n, n);
    for (std::int64_t i = 1; i < n; ++i)
      for (std::int64_t j = 0; j < i; ++j) {
        double v;
        in.read(reinterpret_cast<char*>(&v), 8);
        dist(i, j) = dist(j, i) = v;
      }
    s = FiniteSpace::dense(std::move(dist), std::move(masses), std::move(coords));
  } else {
    s = FiniteSpace::euclidean(std::move(coords), std::move(masses));
  }
  std::int64_t meta_len = 0;
  in.read(reinterpret_cast<char*>(&meta_len), 8);
  if (in.good() && meta_len > 0) {
    std::string meta(static_cast<std::size_t>(meta_len), '\0');
    in.read(meta.data(), meta_len);
    s.metadata = nlohmann::ordered_json::parse(meta, nullptr, false);
    if (s.metadata.is_discarded()) s.metadata = nlohmann::ordered_json::object();
  }
  return s;
}

void FiniteSpace::hash_into(Fnv1a& h) const {
  h.update(static_cast<std::int64_t>(size()));
  h.update(masses_);
  if (backend_ == Backend::dense) {
    for (int i = 1; i < size(); ++i)
      for (int j = 0; j < i; ++j) h.update(dist_(i, j));
  } else if (has_coords()) {
    h.update(coords_);
  }
}

std::string FiniteSpace::input_hash() const {
  Fnv1a h;
  hash_into(h);
  return h.hex();
}

CenterView make_center_view(const FiniteSpace& space, int center) {
  const int n = space.size();
  CenterView v;
  v.center = center;
  const VectorXd row = space.distances_from(center);
  v.order = argsort(row, n);
  v.dist_sorted.resize(n);
  v.pos.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    v.dist_sorted[k] = row[v.order[k]];
    v.pos[v.order[k]] = k;
  }
  for (int k = 0; k < n; ++k) {
    if (k + 1 == n || v.dist_sorted[k + 1] != v.dist_sorted[k]) {
      v.group_end.push_back(k + 1);
      v.radii.push_back(v.dist_sorted[k]);
    }
  }
  return v;
}

std::vector<int> nearest_center_assignment(const FiniteSpace& space,
                                           const std::vector<int>& centers) {
  require(!centers.empty(), "need at least one center");
  require(std::is_sorted(centers.begin(), centers.end()),
          "centers must be sorted so ties break to the smaller id");
  const int n = space.size();
  std::vector<int> assign(n, -1);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const VectorXd row = space.distances_from(centers[c]);
    for (int i = 0; i < n; ++i) {
      if (row[i] < best[i]) {  // strict: ties stay with the smaller center id
        best[i] = row[i];
        assign[i] = static_cast<int>(c);
      }
    }
  }
  return assign;
}

}  // namespace mms
