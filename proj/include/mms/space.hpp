#ifndef MMS_SPACE_HPP
#define MMS_SPACE_HPP

#include "mms/core.hpp"
#include "mms/grid.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace mms {

/// Scale parameters for the admissible ball family: balls of radius <= b,
/// with the midpoint constants (beta, R0) they must be compatible with.
struct GeometryParams {
  double b = 1.0;
  double beta = 0.75;
  double R0 = 0.0;

  void validate() const {
    require(beta > 0.5 && beta < 1.0, "beta must lie in (1/2, 1)");
    require(R0 >= 0.0, "R0 must be nonnegative");
    require(b > R0 / (1.0 - beta), "need b > R0 / (1 - beta)");
  }
};

/// Finite metric measure space: points with positive masses and a metric,
/// backed by a dense symmetric matrix, by Euclidean coordinates, or by a
/// grid graph solved lazily per source. Balls are closed: y in B(x,r) iff
/// dist(x,y) <= r. Immutable after construction.
class FiniteSpace {
 public:
  static FiniteSpace dense(MatrixXd dist, VectorXd masses, MatrixXd coords = MatrixXd());
  static FiniteSpace euclidean(MatrixXd coords, VectorXd masses);
  static FiniteSpace grid_backed(std::shared_ptr<const GridMetric> gm, VectorXd masses);

  int size() const { return static_cast<int>(masses_.size()); }
  const VectorXd& masses() const { return masses_; }
  double mass(int i) const { return masses_[i]; }
  double total_mass() const { return total_mass_; }
  bool has_coords() const { return coords_.rows() == masses_.size() && coords_.cols() > 0; }
  const MatrixXd& coords() const { return coords_; }
  bool has_dense() const { return backend_ == Backend::dense; }
  const MatrixXd& dist_matrix() const;

  double dist(int i, int j) const;
  /// All distances from point i; memoized for the grid backend.
  VectorXd distances_from(int i) const;
  double diameter() const;

  std::vector<int> ball(int center, double r) const;
  double ball_mass(int center, double r) const;

  struct TriangleAudit {
    bool ok = true;
    double worst = 0.0;  // largest d(i,j) - d(i,k) - d(k,j), should be <= tol
    std::int64_t checked = 0;
    int i = -1, j = -1, k = -1;
  };
  /// Deterministic stride-sampled triangle-inequality audit.
  TriangleAudit triangle_audit(int sample_points = 160, double rel_tol = 1e-9) const;

  void save_binary(const std::string& path) const;
  static FiniteSpace load_binary(const std::string& path);

  void hash_into(Fnv1a& h) const;
  std::string input_hash() const;

  nlohmann::ordered_json metadata;

 private:
  enum class Backend { dense, euclid, grid };
  FiniteSpace() = default;

  struct RowCache {
    std::mutex mutex;
    std::unordered_map<int, VectorXd> rows;
  };

  Backend backend_ = Backend::dense;
  MatrixXd dist_;
  MatrixXd coords_;
  VectorXd masses_;
  double total_mass_ = 0.0;
  std::shared_ptr<const GridMetric> grid_;
  std::shared_ptr<RowCache> cache_ = std::make_shared<RowCache>();
  mutable double diameter_ = -1.0;
};

/// View of the space sorted by distance from one center, with prefix groups
/// at the distinct realized radii. Prefix g covers exactly the closed ball
/// B(center, radii[g]).
struct CenterView {
  int center = -1;
  std::vector<int> order;      // ids by ascending distance, ties by id
  VectorXd dist_sorted;
  std::vector<int> group_end;  // exclusive end index per distinct radius
  std::vector<double> radii;   // distinct radius values, ascending
  std::vector<int> pos;        // pos[id] = rank of id in `order`
};

CenterView make_center_view(const FiniteSpace& space, int center);

/// Assigns every point to its nearest center (ties to the smaller center id).
/// Returns per-point index into `centers`.
std::vector<int> nearest_center_assignment(const FiniteSpace& space,
                                           const std::vector<int>& centers);

}  // namespace mms

#endif
