#include "core/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/linalg.hpp"

namespace kt {

namespace {

using IntPoint = std::vector<Int>;

Int dot(const IntPoint& a, const IntPoint& b) {
  Int sum(0);
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// One simplicial piece of the hull boundary. Coplanar pieces belonging to the
// same true facet share (normal, offset).
struct FacetPiece {
  std::vector<std::size_t> verts;  // sorted point indices, size k
  IntPoint normal;                 // primitive integer, outward
  Int offset;                      // <normal, x> = offset on the piece
};

// Affine structure of a point set: dimension plus indices of an affinely
// independent spanning subset (first entry is the base point).
struct AffineBasis {
  uint32_t dim = 0;
  std::vector<std::size_t> indices;
  std::vector<std::size_t> pivot_cols;
};

AffineBasis affine_basis(const std::vector<IntPoint>& pts, uint32_t ambient) {
  AffineBasis basis;
  basis.indices.push_back(0);
  std::vector<std::vector<Rat>> rows;  // row echelon of accepted differences
  for (std::size_t i = 1; i < pts.size() && basis.dim < ambient; ++i) {
    std::vector<Rat> v(ambient);
    for (std::size_t j = 0; j < ambient; ++j) v[j] = Rat(pts[i][j] - pts[0][j]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t c = basis.pivot_cols[r];
      if (v[c] == 0) continue;
      const Rat factor = v[c] / rows[r][c];
      for (std::size_t j = 0; j < ambient; ++j) v[j] -= factor * rows[r][j];
    }
    std::size_t lead = ambient;
    for (std::size_t j = 0; j < ambient; ++j) {
      if (v[j] != 0) {
        lead = j;
        break;
      }
    }
    if (lead == ambient) continue;
    rows.push_back(std::move(v));
    basis.pivot_cols.push_back(lead);
    basis.indices.push_back(i);
    ++basis.dim;
  }
  return basis;
}

// Incremental exact hull of a full-dimensional integer point set.
class BeneathBeyond {
public:
  BeneathBeyond(const std::vector<IntPoint>& pts, uint32_t k,
                const std::vector<std::size_t>& simplex)
      : pts_(pts), k_(k) {
    interior_sum_.assign(k_, Int(0));
    for (const std::size_t idx : simplex) {
      for (uint32_t j = 0; j < k_; ++j) interior_sum_[j] += pts_[idx][j];
    }
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      std::vector<std::size_t> verts;
      for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i != drop) verts.push_back(simplex[i]);
      }
      std::sort(verts.begin(), verts.end());
      facets_.push_back(make_facet(std::move(verts)));
    }
  }

  void insert(std::size_t idx) {
    const IntPoint& p = pts_[idx];
    std::vector<char> visible(facets_.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (dot(facets_[f].normal, p) > facets_[f].offset) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) return;  // inside or on the boundary: never a vertex
    std::map<std::vector<std::size_t>, int> ridge_count;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (!visible[f]) continue;
      const auto& verts = facets_[f].verts;
      for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        std::vector<std::size_t> ridge;
        ridge.reserve(verts.size() - 1);
        for (std::size_t i = 0; i < verts.size(); ++i) {
          if (i != drop) ridge.push_back(verts[i]);
        }
        ridge_count[std::move(ridge)] += 1;
      }
    }
    std::vector<FacetPiece> next;
    next.reserve(facets_.size());
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (!visible[f]) next.push_back(std::move(facets_[f]));
    }
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;  // interior ridge of the visible region
      std::vector<std::size_t> verts = ridge;
      verts.push_back(idx);
      std::sort(verts.begin(), verts.end());
      next.push_back(make_facet(std::move(verts)));
    }
    facets_ = std::move(next);
  }

  const std::vector<FacetPiece>& facets() const { return facets_; }

private:
  FacetPiece make_facet(std::vector<std::size_t> verts) {
    FacetPiece facet;
    facet.normal = cross_normal(verts);
    bool all_zero = true;
    for (const Int& x : facet.normal) {
      if (x != 0) all_zero = false;
    }
    if (all_zero) fail(ErrorKind::Internal, "hull: degenerate facet candidate");
    facet.offset = dot(facet.normal, pts_[verts[0]]);
    // Orient so the initial-simplex centroid lies strictly inside.
    const Int side = Int(k_ + 1) * facet.offset - dot(facet.normal, interior_sum_);
    if (side == 0) fail(ErrorKind::Internal, "hull: interior point on facet plane");
    if (side < 0) {
      for (Int& x : facet.normal) x = -x;
      facet.offset = -facet.offset;
    }
    Int g(0);
    for (const Int& x : facet.normal) g = gcd(g, x);
    if (g > 1) {
      for (Int& x : facet.normal) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      }
      facet.offset = dot(facet.normal, pts_[verts[0]]);
    }
    facet.verts = std::move(verts);
    return facet;
  }

  // Null vector of the (k-1) x k edge matrix via signed maximal minors.
  IntPoint cross_normal(const std::vector<std::size_t>& verts) const {
    std::vector<IntPoint> edges;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      IntPoint e(k_);
      for (uint32_t j = 0; j < k_; ++j) {
        e[j] = pts_[verts[i]][j] - pts_[verts[0]][j];
      }
      edges.push_back(std::move(e));
    }
    IntPoint normal(k_);
    for (uint32_t skip = 0; skip < k_; ++skip) {
      linalg::IntMat minor(edges.size(), std::vector<Int>(k_ - 1));
      for (std::size_t r = 0; r < edges.size(); ++r) {
        std::size_t c = 0;
        for (uint32_t j = 0; j < k_; ++j) {
          if (j != skip) minor[r][c++] = edges[r][j];
        }
      }
      const Int d = linalg::det(std::move(minor));
      normal[skip] = (skip % 2 == 0) ? d : Int(-d);
    }
    return normal;
  }

  const std::vector<IntPoint>& pts_;
  uint32_t k_;
  IntPoint interior_sum_;
  std::vector<FacetPiece> facets_;
};

struct FullHull {
  std::vector<std::size_t> vertex_indices;  // sorted
  Rat volume;                               // in the given integer coords
  std::map<IntPoint, Rat> atoms;            // primitive normal -> measure
};

// Piece measure: |det[edge rows; normal]| / ((k-1)! * |normal|^2). This is
// the Euclidean (k-1)-volume of the piece divided by |normal|.
Rat piece_measure(const std::vector<IntPoint>& pts, const FacetPiece& facet,
                  uint32_t k) {
  linalg::IntMat m(k, std::vector<Int>(k));
  for (std::size_t i = 1; i < facet.verts.size(); ++i) {
    for (uint32_t j = 0; j < k; ++j) {
      m[i - 1][j] = pts[facet.verts[i]][j] - pts[facet.verts[0]][j];
    }
  }
  m[k - 1] = facet.normal;
  Int d = linalg::det(std::move(m));
  if (d < 0) d = -d;
  Rat measure(d, factorial(k - 1) * dot(facet.normal, facet.normal));
  measure.canonicalize();
  return measure;
}

FullHull hull_full_dim(const std::vector<IntPoint>& pts, uint32_t k,
                       const AffineBasis& basis) {
  BeneathBeyond builder(pts, k, basis.indices);
  std::vector<char> in_simplex(pts.size(), 0);
  for (const std::size_t idx : basis.indices) in_simplex[idx] = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!in_simplex[i]) builder.insert(i);
  }

  FullHull result;
  const IntPoint& apex = pts[basis.indices[0]];
  Rat vol(0);
  std::map<std::size_t, std::vector<const FacetPiece*>> incident;
  for (const FacetPiece& facet : builder.facets()) {
    const Rat m = piece_measure(pts, facet, k);
    vol += Rat(facet.offset - dot(facet.normal, apex)) * m;
    result.atoms[facet.normal] += m;
    for (const std::size_t v : facet.verts) incident[v].push_back(&facet);
  }
  result.volume = vol / k;
  result.volume.canonicalize();

  // A boundary point is a vertex exactly when its incident facet normals span
  // the whole space.
  for (const auto& [idx, pieces] : incident) {
    std::map<IntPoint, char> seen;
    linalg::RatMat normals;
    for (const FacetPiece* piece : pieces) {
      if (seen.emplace(piece->normal, 1).second) {
        std::vector<Rat> row(k);
        for (uint32_t j = 0; j < k; ++j) row[j] = Rat(piece->normal[j]);
        normals.push_back(std::move(row));
      }
    }
    if (linalg::rank(std::move(normals)) == k) {
      result.vertex_indices.push_back(idx);
    }
  }
  std::sort(result.vertex_indices.begin(), result.vertex_indices.end());
  return result;
}

// Exact coordinates of the points inside their affine hull, in the basis of
// independent difference vectors.
std::vector<std::vector<Rat>> project_to_affine(const std::vector<IntPoint>& pts,
                                                const AffineBasis& basis,
                                                uint32_t ambient) {
  const uint32_t k = basis.dim;
  linalg::RatMat square(k, std::vector<Rat>(k));
  for (uint32_t r = 0; r < k; ++r) {
    const std::size_t row = basis.pivot_cols[r];
    for (uint32_t s = 0; s < k; ++s) {
      const std::size_t pt = basis.indices[s + 1];
      square[r][s] = Rat(pts[pt][row] - pts[0][row]);
    }
  }
  const auto inv = linalg::inverse(square);
  if (!inv) fail(ErrorKind::Internal, "affine projection: singular basis block");
  std::vector<std::vector<Rat>> projected(pts.size(), std::vector<Rat>(k, Rat(0)));
  (void)ambient;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (uint32_t r = 0; r < k; ++r) {
      const Rat rhs = Rat(pts[i][basis.pivot_cols[r]] - pts[0][basis.pivot_cols[r]]);
      if (rhs == 0) continue;
      for (uint32_t s = 0; s < k; ++s) projected[i][s] += (*inv)[s][r] * rhs;
    }
  }
  return projected;
}

// Clears denominators; returns the common scale L with scaled = L * original.
Int scale_to_integers(const std::vector<std::vector<Rat>>& pts,
                      std::vector<IntPoint>& out) {
  Int scale(1);
  for (const auto& p : pts) {
    for (const Rat& x : p) scale = lcm(scale, x.get_den());
  }
  out.assign(pts.size(), IntPoint());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i].resize(pts[i].size());
    for (std::size_t j = 0; j < pts[i].size(); ++j) {
      Int q;
      mpz_divexact(q.get_mpz_t(), scale.get_mpz_t(),
                   pts[i][j].get_den().get_mpz_t());
      out[i][j] = pts[i][j].get_num() * q;
    }
  }
  return scale;
}

void require_same_dim(const Polytope& p, const Polytope& q, const char* op) {
  if (p.dim() != q.dim()) {
    fail(ErrorKind::Precondition,
         std::string(op) + ": ambient dimension mismatch (" +
             std::to_string(p.dim()) + " vs " + std::to_string(q.dim()) + ")");
  }
}

std::vector<Rat> vertex_centroid(const Polytope& p) {
  std::vector<Rat> c(p.dim(), Rat(0));
  for (const auto& v : p.vertices()) {
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += v[j];
  }
  const Rat count(static_cast<long>(p.vertices().size()));
  for (Rat& x : c) {
    x /= count;
    x.canonicalize();
  }
  return c;
}

// Hull of { sum_i coeff_i * v_i } folded pairwise so candidate sets stay small.
Polytope fold_combination(std::span<const Polytope* const> bodies,
                          std::span<const Rat> coeffs) {
  std::optional<Polytope> acc;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Polytope scaled = scale_polytope(*bodies[i], coeffs[i]);
    if (!acc) {
      acc = std::move(scaled);
    } else {
      acc = minkowski_sum(*acc, scaled);
    }
  }
  if (!acc) fail(ErrorKind::Precondition, "empty polytope combination");
  return std::move(*acc);
}

}  // namespace

Polytope Polytope::from_points(uint32_t dim, std::vector<std::vector<Rat>> points) {
  if (dim == 0) fail(ErrorKind::Precondition, "polytope: dimension must be positive");
  if (points.empty()) fail(ErrorKind::Precondition, "polytope: empty point set");
  for (auto& p : points) {
    if (p.size() != dim) {
      fail(ErrorKind::Precondition, "polytope: point has wrong coordinate count");
    }
    for (Rat& x : p) x.canonicalize();
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope result;
  result.dim_ = dim;
  result.volume_ = Rat(0);

  std::vector<IntPoint> scaled;
  const Int scale = scale_to_integers(points, scaled);
  const AffineBasis basis = affine_basis(scaled, dim);
  result.affine_dim_ = basis.dim;

  if (basis.dim == 0) {
    result.vertices_.push_back(points[0]);
    return result;
  }

  if (basis.dim == dim) {
    const FullHull hull = hull_full_dim(scaled, dim, basis);
    for (const std::size_t idx : hull.vertex_indices) {
      result.vertices_.push_back(points[idx]);
    }
    const Rat scale_pow_d = pow_rat(Rat(scale), dim);
    result.volume_ = hull.volume / scale_pow_d;
    result.volume_.canonicalize();
    const Rat scale_pow_d1 = pow_rat(Rat(scale), dim - 1);
    for (const auto& [normal, measure] : hull.atoms) {
      Rat m = measure / scale_pow_d1;
      m.canonicalize();
      result.surface_.atoms.emplace(normal, std::move(m));
    }
    return result;
  }

  // Lower-dimensional body: take the hull inside its affine hull; only the
  // vertex set survives to the ambient space.
  const auto projected = project_to_affine(scaled, basis, dim);
  std::vector<IntPoint> scaled_proj;
  scale_to_integers(projected, scaled_proj);
  const AffineBasis proj_basis = affine_basis(scaled_proj, basis.dim);
  if (proj_basis.dim != basis.dim) {
    fail(ErrorKind::Internal, "projection lost affine dimension");
  }
  const FullHull hull = hull_full_dim(scaled_proj, basis.dim, proj_basis);
  for (const std::size_t idx : hull.vertex_indices) {
    result.vertices_.push_back(points[idx]);
  }
  return result;
}

Rat volume(const Polytope& p) { return p.cached_volume(); }

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  require_same_dim(p, q, "minkowski_sum");
  std::vector<std::vector<Rat>> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      std::vector<Rat> s(p.dim());
      for (uint32_t j = 0; j < p.dim(); ++j) s[j] = a[j] + b[j];
      sums.push_back(std::move(s));
    }
  }
  return Polytope::from_points(p.dim(), std::move(sums));
}

Polytope scale_polytope(const Polytope& p, const Rat& c) {
  if (c <= 0) fail(ErrorKind::Precondition, "scale_polytope: scale must be positive");
  // Scaling by c > 0 preserves irredundancy and lexicographic order, so the
  // hull does not need to be recomputed.
  Polytope out = p;
  for (auto& vertex : out.vertices_) {
    for (Rat& x : vertex) {
      x *= c;
      x.canonicalize();
    }
  }
  out.volume_ *= pow_rat(c, p.dim());
  out.volume_.canonicalize();
  const Rat factor = pow_rat(c, p.dim() - 1);
  for (auto& [normal, measure] : out.surface_.atoms) {
    measure *= factor;
    measure.canonicalize();
  }
  return out;
}

Polytope translate_polytope(const Polytope& p, std::span<const Rat> v) {
  if (v.size() != p.dim()) {
    fail(ErrorKind::Precondition, "translate_polytope: vector dimension mismatch");
  }
  Polytope out = p;
  for (auto& vertex : out.vertices_) {
    for (uint32_t j = 0; j < p.dim(); ++j) {
      vertex[j] += v[j];
      vertex[j].canonicalize();
    }
  }
  return out;
}

KTSequence mixed_volume_sequence(const Polytope& p, const Polytope& q) {
  require_same_dim(p, q, "mixed_volume_sequence");
  const uint32_t n = p.dim();
  // vol(P + tQ) = sum_k C(n,k) V(P[n-k], Q[k]) t^k; sample at t = 0..n and
  // solve the Vandermonde system exactly.
  std::vector<Rat> samples;
  samples.reserve(n + 1);
  for (uint32_t t = 0; t <= n; ++t) {
    if (t == 0) {
      samples.push_back(volume(p));
    } else {
      const Polytope* bodies[2] = {&p, &q};
      const Rat coeffs[2] = {Rat(1), Rat(static_cast<long>(t))};
      samples.push_back(volume(fold_combination(bodies, coeffs)));
    }
  }
  linalg::RatMat vm(n + 1, std::vector<Rat>(n + 1));
  for (uint32_t t = 0; t <= n; ++t) {
    Rat power(1);
    for (uint32_t k = 0; k <= n; ++k) {
      vm[t][k] = power;
      power *= Rat(static_cast<long>(t));
    }
  }
  const auto coeffs = linalg::solve(std::move(vm), std::move(samples));
  if (!coeffs) fail(ErrorKind::Internal, "mixed volume interpolation failed");
  KTSequence seq;
  seq.s.resize(n + 1);
  for (uint32_t k = 0; k <= n; ++k) {
    Rat s = (*coeffs)[n - k] / Rat(binomial(n, n - k));
    s.canonicalize();
    seq.s[k] = std::move(s);
  }
  return seq;
}

Rat mixed_volume_polarization(std::span<const Polytope> bodies) {
  const uint32_t n = static_cast<uint32_t>(bodies.size());
  if (n == 0) fail(ErrorKind::Precondition, "polarization: no bodies");
  for (const Polytope& b : bodies) {
    if (b.dim() != n) {
      fail(ErrorKind::Precondition,
           "polarization: need n bodies in dimension n (got dim " +
               std::to_string(b.dim()) + " with n = " + std::to_string(n) + ")");
    }
  }
  // Group equal bodies so repeated sums collapse to scalings.
  std::vector<const Polytope*> distinct;
  std::vector<uint32_t> counts;
  for (const Polytope& b : bodies) {
    bool found = false;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      if (*distinct[i] == b) {
        counts[i] += 1;
        found = true;
        break;
      }
    }
    if (!found) {
      distinct.push_back(&b);
      counts.push_back(1);
    }
  }
  const std::size_t groups = distinct.size();
  std::vector<uint32_t> take(groups, 0);
  Rat total(0);
  while (true) {
    // Advance the multi-counter over 0 <= take[i] <= counts[i].
    std::size_t pos = 0;
    while (pos < groups && take[pos] == counts[pos]) {
      take[pos] = 0;
      ++pos;
    }
    if (pos == groups) break;
    take[pos] += 1;
    uint32_t picked = 0;
    Int weight(1);
    for (std::size_t i = 0; i < groups; ++i) {
      picked += take[i];
      weight *= binomial(counts[i], take[i]);
    }
    if (picked == 0) continue;
    std::vector<Rat> coeffs(groups);
    for (std::size_t i = 0; i < groups; ++i) coeffs[i] = Rat(take[i]);
    const Rat vol = volume(fold_combination(distinct, coeffs));
    const int sign = ((n - picked) % 2 == 0) ? 1 : -1;
    total += Rat(sign * weight) * vol;
  }
  Rat v = total / Rat(factorial(n));
  v.canonicalize();
  return v;
}

SurfaceMeasure surface_area_measure(const Polytope& p) {
  if (!p.full_dimensional()) {
    fail(ErrorKind::Precondition,
         "surface_area_measure: polytope is degenerate (affine dimension " +
             std::to_string(p.affine_dim()) + " < " + std::to_string(p.dim()) +
             ")");
  }
  return p.cached_surface();
}

HomothetyResult homothety_detect(const Polytope& p, const Polytope& q) {
  require_same_dim(p, q, "homothety_detect");
  if (!p.full_dimensional() || !q.full_dimensional()) {
    fail(ErrorKind::Precondition, "homothety_detect: bodies must be full-dimensional");
  }
  HomothetyResult result;
  Rat ratio = volume(q) / volume(p);
  ratio.canonicalize();
  const auto scale = rational_root(ratio, p.dim());
  if (!scale) {
    result.irrational_scale = true;
    return result;
  }
  if (p.vertices().size() != q.vertices().size()) return result;
  const auto cp = vertex_centroid(p);
  const auto cq = vertex_centroid(q);
  std::vector<Rat> shift(p.dim());
  for (uint32_t j = 0; j < p.dim(); ++j) {
    shift[j] = cq[j] - *scale * cp[j];
    shift[j].canonicalize();
  }
  // c > 0 homothety preserves lexicographic vertex order, so a sorted
  // element-wise comparison decides the vertex-set identity.
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    for (uint32_t j = 0; j < p.dim(); ++j) {
      Rat mapped = *scale * p.vertices()[i][j] + shift[j];
      if (mapped != q.vertices()[i][j]) return result;
    }
  }
  result.witness = HomothetyWitness{*scale, std::move(shift)};
  return result;
}

std::optional<Rat> surface_measures_proportional(const SurfaceMeasure& p,
                                                 const SurfaceMeasure& q) {
  if (p.atoms.empty() || q.atoms.empty()) return std::nullopt;
  if (p.atoms.size() != q.atoms.size()) return std::nullopt;
  auto it_p = p.atoms.begin();
  auto it_q = q.atoms.begin();
  Rat ratio(0);
  for (; it_p != p.atoms.end(); ++it_p, ++it_q) {
    if (it_p->first != it_q->first) return std::nullopt;
    if (ratio == 0) {
      ratio = it_q->second / it_p->second;
      ratio.canonicalize();
    } else if (it_q->second != ratio * it_p->second) {
      return std::nullopt;
    }
  }
  return ratio;
}

Polytope sample_lattice_polytope(Rng& rng, uint32_t dim, int max_points,
                                 int coord_max) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<Rat>> pts;
    for (int i = 0; i < max_points; ++i) {
      std::vector<Rat> p(dim);
      for (uint32_t j = 0; j < dim; ++j) {
        p[j] = Rat(rng.uniform_int(0, coord_max));
      }
      pts.push_back(std::move(p));
    }
    Polytope body = Polytope::from_points(dim, std::move(pts));
    if (body.full_dimensional()) return body;
  }
  fail(ErrorKind::Internal, "sample_lattice_polytope: no full-dimensional draw");
}

}  // namespace kt
