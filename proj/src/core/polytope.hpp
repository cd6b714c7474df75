#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "core/intersect.hpp"
#include "core/rational.hpp"
#include "core/rng.hpp"

namespace kt {

// Facet measures keyed by primitive integer outward normals. A facet's
// measure is its Euclidean (d-1)-volume divided by the Euclidean length of
// the stored normal; this keeps every atom rational and makes the Minkowski
// relation sum(measure * normal) = 0 hold exactly.
struct SurfaceMeasure {
  std::map<std::vector<Int>, Rat> atoms;

  bool operator==(const SurfaceMeasure&) const = default;
};

struct HomothetyWitness {
  Rat scale;
  std::vector<Rat> translation;
};

struct HomothetyResult {
  std::optional<HomothetyWitness> witness;
  // vol(Q)/vol(P) has no rational d-th root; the bodies cannot be related by
  // a rational homothety, and no exact verification is possible.
  bool irrational_scale = false;
};

// Rational-vertex convex body. Instances are always in reduced form: the
// vertex list is irredundant and lexicographically sorted, and volume plus
// facet data are computed on construction.
class Polytope {
public:
  static Polytope from_points(uint32_t dim, std::vector<std::vector<Rat>> points);

  uint32_t dim() const { return dim_; }
  uint32_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }
  const std::vector<std::vector<Rat>>& vertices() const { return vertices_; }
  const Rat& cached_volume() const { return volume_; }
  const SurfaceMeasure& cached_surface() const { return surface_; }

  bool operator==(const Polytope& other) const {
    return dim_ == other.dim_ && vertices_ == other.vertices_;
  }

private:
  Polytope() = default;

  friend Polytope scale_polytope(const Polytope& p, const Rat& c);
  friend Polytope translate_polytope(const Polytope& p, std::span<const Rat> v);

  uint32_t dim_ = 0;
  uint32_t affine_dim_ = 0;
  std::vector<std::vector<Rat>> vertices_;
  Rat volume_;
  SurfaceMeasure surface_;  // empty unless full-dimensional
};

// Exact d-dimensional Euclidean volume; 0 iff not full-dimensional.
Rat volume(const Polytope& p);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

// Exact transforms (c > 0). These preserve the reduced form directly.
Polytope scale_polytope(const Polytope& p, const Rat& c);
Polytope translate_polytope(const Polytope& p, std::span<const Rat> v);

// s_k = V(P[k], Q[n-k]), from vol(P + tQ) sampled at t = 0..n and an exact
// Vandermonde solve.
KTSequence mixed_volume_sequence(const Polytope& p, const Polytope& q);

// Inclusion-exclusion over subset volumes: n! V(P_1,...,P_n) =
// sum_{S nonempty} (-1)^{n-|S|} vol(sum_{i in S} P_i).
Rat mixed_volume_polarization(std::span<const Polytope> bodies);

SurfaceMeasure surface_area_measure(const Polytope& p);

HomothetyResult homothety_detect(const Polytope& p, const Polytope& q);

// Proportionality of two surface measures: equal support and one exact
// common ratio. Returns the ratio q/p when it exists.
std::optional<Rat> surface_measures_proportional(const SurfaceMeasure& p,
                                                 const SurfaceMeasure& q);

// Hull of up to max_points lattice points in [0, coord_max]^dim; redraws
// until full-dimensional.
Polytope sample_lattice_polytope(Rng& rng, uint32_t dim, int max_points = 12,
                                 int coord_max = 8);

}  // namespace kt
