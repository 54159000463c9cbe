#include "mms/chains.hpp"

#include <cmath>

namespace mms {

namespace {

// nearest level-nu net center to point w, ties to the smaller id
int snap_to_net(const FiniteSpace& space, const std::vector<int>& centers, int w) {
  const VectorXd row = space.distances_from(w);
  double best = std::numeric_limits<double>::infinity();
  int best_c = -1;
  for (int c : centers) {
    if (row[c] < best) {
      best = row[c];
      best_c = c;
    }
  }
  return best_c;
}

}  // namespace

double chain_length_bound(double d, double b, double beta) {
  const double p = 1.0 / (1.0 - std::log2(1.0 + beta));
  return std::max(4.0 * std::pow(2.0 * d / b, p) + 1.0, 2.0);
}

Chain build_chain(const FiniteSpace& space, const NetHierarchy& nets, int nu, int o,
                  int z, const ChainParams& params) {
  require(nu >= nets.k_min && nu <= nets.k_max, "nu outside the net hierarchy");
  const auto& centers = nets.centers(nu);
  require(std::binary_search(centers.begin(), centers.end(), o) &&
              std::binary_search(centers.begin(), centers.end(), z),
          "chain endpoints must be level-nu net centers");
  const double delta_nu = nets.scale(nu);
  require(params.b > 4.0 * delta_nu / (1.0 - params.beta),
          "need b > 4 delta^nu / (1 - beta)");
  require(params.R0 < params.b / 2.0, "need R0 < b/2 so midpoints exist on long links");

  Chain chain;
  chain.b = params.b;
  chain.nu = nu;
  chain.span = space.dist(o, z);

  const int n = space.size();
  // recursive bisection, explicit stack of open segments
  std::vector<std::pair<int, int>> stack;
  std::vector<int> out;
  out.push_back(o);
  if (o != z) stack.emplace_back(o, z);

  VectorXd v(n);
  int guard = 0;
  while (!stack.empty()) {
    require(++guard < 8 * n + 64, "chain recursion did not terminate");
    const auto [x, y] = stack.back();
    stack.pop_back();
    const double d = space.dist(x, y);
    if (d < params.b / 2.0) {
      out.push_back(y);
      continue;
    }
    const VectorXd dx = space.distances_from(x);
    const VectorXd dy = space.distances_from(y);
    v = dx.cwiseMax(dy);
    v[x] = v[y] = std::numeric_limits<double>::infinity();
    int w;
    const double best = v.minCoeff(&w);
    if (!(best < params.beta * d + params.relax))
      throw std::runtime_error("no approximate midpoint for pair (" +
                               std::to_string(x) + ", " + std::to_string(y) + ")");
    const int wc = snap_to_net(space, centers, w);
    if (wc == x || wc == y)
      throw std::runtime_error("chain split stalled; net too coarse for b");
    const double ratio = std::max(space.dist(wc, x), space.dist(wc, y)) / d;
    chain.contraction = std::max(chain.contraction, ratio);
    // push right first so the left half is processed next (ordered output)
    stack.emplace_back(wc, y);
    stack.emplace_back(x, wc);
  }

  chain.centers = std::move(out);
  for (std::size_t j = 0; j + 1 < chain.centers.size(); ++j)
    chain.link_dist.push_back(space.dist(chain.centers[j], chain.centers[j + 1]));
  return chain;
}

ChainCertificate certify_chain(const FiniteSpace& space, const Chain& chain,
                               const ChainParams& params, double beta_measured) {
  ChainCertificate cert;
  cert.bound = chain_length_bound(chain.span, chain.b, beta_measured);
  cert.length_ok = chain.length() <= cert.bound + 1e-9;
  for (double l : chain.link_dist)
    if (!(l < chain.b / 2.0)) cert.links_ok = false;

  if (params.a0_abs > 0.0) {
    for (std::size_t j = 0; j + 1 < chain.centers.size(); ++j) {
      const int zj = chain.centers[j];
      const int zj1 = chain.centers[j + 1];
      const VectorXd dj = space.distances_from(zj);
      const VectorXd dj1 = space.distances_from(zj1);
      double small_mass = 0.0, big_mass = 0.0;
      for (int p = 0; p < space.size(); ++p) {
        const bool in_small = dj1[p] <= params.a0_abs;
        if (in_small) {
          small_mass += space.mass(p);
          if (dj[p] > chain.b || dj1[p] > chain.b) cert.intersections_ok = false;
        }
        if (dj1[p] <= chain.b) big_mass += space.mass(p);
      }
      if (small_mass > 0.0)
        cert.worst_ball_ratio = std::max(cert.worst_ball_ratio, big_mass / small_mass);
    }
  }
  return cert;
}

CoveringMultiplicity covering_multiplicity(const FiniteSpace& space,
                                           const NetHierarchy& nets, int nu, double b) {
  const auto& centers = nets.centers(nu);
  require(!centers.empty(), "empty net level");
  const int n = space.size();
  std::vector<int> count(n, 0);
  for (int c : centers) {
    const VectorXd row = space.distances_from(c);
    for (int p = 0; p < n; ++p)
      if (row[p] <= b) ++count[p];
  }
  CoveringMultiplicity mult;
  mult.points = n;
  mult.N0 = 0;
  mult.min_cover = n > 0 ? count[0] : 0;
  for (int p = 0; p < n; ++p) {
    mult.N0 = std::max(mult.N0, count[p]);
    mult.min_cover = std::min(mult.min_cover, count[p]);
  }
  if (mult.min_cover < 1)
    throw std::runtime_error("covering gap: some point lies in no net ball");
  return mult;
}

}  // namespace mms
