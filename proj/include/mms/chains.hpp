#ifndef MMS_CHAINS_HPP
#define MMS_CHAINS_HPP

#include "mms/nets.hpp"

namespace mms {

struct Chain {
  std::vector<int> centers;        // point ids, first = o, last = z
  double b = 0.0;
  int nu = 0;                      // net level used
  std::vector<double> link_dist;   // consecutive distances, all < b/2
  double contraction = 0.0;        // worst per-split ratio max(d(w,o), d(w,z)) / d(o,z)
  double span = 0.0;               // d(o, z)

  int length() const { return static_cast<int>(centers.size()); }
};

struct ChainParams {
  double b = 0.0;
  double beta = 0.75;
  double R0 = 0.0;
  double relax = 0.0;    // additive midpoint slack (grid cell diameter)
  double a0_abs = 0.0;   // absolute inner-ball radius a0 * delta^nu, for certificates
};

/// Chain of net centers from o to z with links shorter than b/2, built by
/// approximate-midpoint bisection snapped to the level-nu net. Throws when no
/// admissible midpoint exists within the relaxation or when a split stalls.
Chain build_chain(const FiniteSpace& space, const NetHierarchy& nets, int nu, int o,
                  int z, const ChainParams& params);

/// Paper-form ceiling for the chain length at distance d: 4 (2d/b)^p + 1 with
/// p = 1/(1 - log2(1 + beta)); at least 2 (the direct two-point chain).
double chain_length_bound(double d, double b, double beta);

struct ChainCertificate {
  bool links_ok = true;          // all links < b/2
  bool length_ok = true;         // N within chain_length_bound at the used beta
  bool intersections_ok = true;  // B(z_{j+1}, a0_abs) inside both consecutive balls
  double worst_ball_ratio = 0.0; // max mu(B(z_{j+1}, b)) / mu(B(z_{j+1}, a0_abs))
  double bound = 0.0;
};

ChainCertificate certify_chain(const FiniteSpace& space, const Chain& chain,
                               const ChainParams& params, double beta_measured);

struct CoveringMultiplicity {
  int N0 = 0;        // max balls containing one point
  int min_cover = 0; // min balls containing one point; must be >= 1
  std::int64_t points = 0;
};

/// Multiplicity of the covering by balls B(z, b) over the level-nu net.
/// Throws if some point is uncovered (a net maximality violation).
CoveringMultiplicity covering_multiplicity(const FiniteSpace& space,
                                           const NetHierarchy& nets, int nu, double b);

}  // namespace mms

#endif
