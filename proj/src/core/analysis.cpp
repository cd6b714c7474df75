#include "core/analysis.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace kt {

namespace {

constexpr double kDefaultTolerance = 1e-9;

Rat max_abs(const std::vector<Rat>& values) {
  Rat m(0);
  for (const Rat& v : values) {
    Rat a = abs(v);
    if (a > m) m = a;
  }
  return m;
}

void require_positive_sequence(const KTSequence& seq) {
  for (std::size_t k = 0; k < seq.s.size(); ++k) {
    if (seq.s[k] <= 0) {
      fail(ErrorKind::Precondition,
           "s_" + std::to_string(k) + " must be positive (got " +
               format_rational(seq.s[k]) + "); the pair is not nef and big");
    }
  }
}

std::string format_class(const ClassVector& v) {
  return "(" + format_rational_vector(v.coords, ", ") + ")";
}

std::string format_vertices(const Polytope& p) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (i) out << ", ";
    out << "(" << format_rational_vector(p.vertices()[i], ",") << ")";
  }
  out << "}";
  return out.str();
}

}  // namespace

DecisionPolicy DecisionPolicy::with_tolerance(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) {
    fail(ErrorKind::Precondition, "tolerance must be positive and finite");
  }
  DecisionPolicy policy;
  policy.approximate = true;
  policy.tolerance = Rat(tol);  // binary double -> rational is exact
  return policy;
}

bool DecisionPolicy::is_zero(const Rat& value, const Rat& scale) const {
  if (!approximate) return value == 0;
  Rat bound = abs(scale);
  if (bound < 1) bound = 1;
  return abs(value) <= tolerance * bound;
}

InequalityReport check_inequalities(const KTSequence& seq,
                                    const DecisionPolicy& policy) {
  if (seq.s.size() < 2) {
    fail(ErrorKind::Precondition, "sequence needs at least s_0 and s_1");
  }
  require_positive_sequence(seq);
  const uint32_t n = seq.n();
  InequalityReport report;
  report.n = n;

  report.log_concavity_equalities = true;
  for (uint32_t k = 1; k < n; ++k) {
    Rat defect = seq.s[k] * seq.s[k] - seq.s[k - 1] * seq.s[k + 1];
    defect.canonicalize();
    if (!policy.is_zero(defect, seq.s[k] * seq.s[k])) {
      report.log_concavity_equalities = false;
    }
    report.log_concavity_defects.push_back(std::move(defect));
  }

  report.power_chain_equalities = true;
  for (uint32_t k = 0; k <= n; ++k) {
    const Rat power = pow_rat(seq.s[k], n);
    Rat defect = power - pow_rat(seq.s[0], n - k) * pow_rat(seq.s[n], k);
    defect.canonicalize();
    if (!policy.is_zero(defect, power)) {
      report.power_chain_equalities = false;
    }
    report.power_chain_defects.push_back(std::move(defect));
  }

  const Rat extreme_power = pow_rat(seq.s[n - 1], n);
  report.endpoint_defect = extreme_power - seq.s[0] * pow_rat(seq.s[n], n - 1);
  report.endpoint_defect.canonicalize();
  report.endpoint_equality = policy.is_zero(report.endpoint_defect, extreme_power);

  for (uint32_t k = 0; k < n; ++k) {
    Rat ratio = seq.s[k + 1] / seq.s[k];
    ratio.canonicalize();
    report.ratio_chain.push_back(std::move(ratio));
  }
  return report;
}

BMResult check_bm_superadditivity(const IntersectionOracle& oracle,
                                  const ClassVector& alpha,
                                  const ClassVector& beta,
                                  const DecisionPolicy& policy) {
  const uint32_t n = oracle.n();
  const KTSequence seq = kt_sequence(oracle, alpha, beta);
  if (seq.s[n] <= 0 || seq.s[0] <= 0) {
    fail(ErrorKind::Precondition,
         "superadditivity check needs big classes (volumes " +
             format_rational(seq.s[n]) + " and " + format_rational(seq.s[0]) +
             ")");
  }
  const ClassVector sum = add_classes(alpha, beta);
  std::vector<ClassVector> copies(n, sum);
  BMResult result;
  result.vol_sum = oracle.eval(copies);
  Rat expansion(0);
  for (uint32_t k = 0; k <= n; ++k) expansion += Rat(binomial(n, k)) * seq.s[k];
  result.identity_defect = result.vol_sum - expansion;
  result.identity_defect.canonicalize();
  result.equality = check_inequalities(seq, policy).power_chain_equalities;
  return result;
}

BMResult check_bm_superadditivity(const Polytope& p, const Polytope& q) {
  if (!p.full_dimensional() || !q.full_dimensional()) {
    fail(ErrorKind::Precondition,
         "superadditivity check needs full-dimensional (big) bodies");
  }
  const uint32_t n = p.dim();
  const KTSequence seq = mixed_volume_sequence(p, q);
  BMResult result;
  result.vol_sum = volume(minkowski_sum(p, q));
  Rat expansion(0);
  for (uint32_t k = 0; k <= n; ++k) expansion += Rat(binomial(n, k)) * seq.s[k];
  result.identity_defect = result.vol_sum - expansion;
  result.identity_defect.canonicalize();
  result.equality = check_inequalities(seq).power_chain_equalities;
  return result;
}

std::optional<Rat> proportionality_check(const ClassVector& alpha,
                                         const ClassVector& beta,
                                         const DecisionPolicy& policy) {
  if (alpha.basis_dim() != beta.basis_dim()) {
    fail(ErrorKind::Precondition, "proportionality: basis dimension mismatch");
  }
  return vector_proportionality(alpha.coords, beta.coords, policy);
}

std::vector<Rat> power_functional(const IntersectionOracle& oracle,
                                  const ClassVector& alpha) {
  if (alpha.basis_dim() != oracle.basis_dim()) {
    fail(ErrorKind::Precondition, "power_functional: basis dimension mismatch");
  }
  const uint32_t n = oracle.n();
  const uint32_t h = oracle.basis_dim();
  std::vector<ClassVector> factors(n, alpha);
  std::vector<Rat> values(h);
  for (uint32_t b = 0; b < h; ++b) {
    ClassVector basis_class(std::vector<Rat>(h, Rat(0)));
    basis_class.coords[b] = 1;
    factors[n - 1] = std::move(basis_class);
    values[b] = oracle.eval(factors);
  }
  return values;
}

std::optional<Rat> vector_proportionality(const std::vector<Rat>& from,
                                          const std::vector<Rat>& to,
                                          const DecisionPolicy& policy) {
  if (from.size() != to.size()) {
    fail(ErrorKind::Precondition, "proportionality: vector length mismatch");
  }
  const Rat from_scale = max_abs(from);
  const Rat to_scale = max_abs(to);
  if (from_scale == 0 || to_scale == 0) return std::nullopt;
  std::optional<Rat> ratio;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const bool from_zero = policy.is_zero(from[i], from_scale);
    const bool to_zero = policy.is_zero(to[i], to_scale);
    if (from_zero != to_zero) return std::nullopt;
    if (from_zero) continue;
    if (!ratio) {
      Rat r = to[i] / from[i];
      r.canonicalize();
      ratio = std::move(r);
    } else if (!policy.is_zero(to[i] - *ratio * from[i], to_scale)) {
      return std::nullopt;
    }
  }
  return ratio;
}

EquivalenceReport equivalence_report(const IntersectionOracle& oracle,
                                     const std::string& model_name,
                                     const ClassVector& alpha,
                                     const ClassVector& beta,
                                     const DecisionPolicy& policy) {
  DecisionPolicy effective = policy;
  if (oracle.approximate() && !effective.approximate) {
    effective = DecisionPolicy::with_tolerance(kDefaultTolerance);
  }
  EquivalenceReport report;
  report.model = model_name;
  report.n = oracle.n();
  report.approximate = effective.approximate;
  report.sequence = kt_sequence(oracle, alpha, beta);
  report.inequalities = check_inequalities(report.sequence, effective);
  report.holds[0] = report.inequalities.log_concavity_equalities;
  report.holds[1] = report.inequalities.power_chain_equalities;
  report.holds[2] = report.inequalities.endpoint_equality;
  report.bm = check_bm_superadditivity(oracle, alpha, beta, effective);
  report.holds[3] = report.bm.equality;
  report.scale = proportionality_check(alpha, beta, effective);
  report.holds[4] = report.scale.has_value();
  report.power_alpha = power_functional(oracle, alpha);
  report.power_beta = power_functional(oracle, beta);
  report.holds[5] =
      vector_proportionality(report.power_alpha, report.power_beta, effective)
          .has_value();
  report.consistent = true;
  for (const bool h : report.holds) {
    if (h != report.holds[0]) report.consistent = false;
  }
  return report;
}

EquivalenceReport equivalence_report(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) {
    fail(ErrorKind::Precondition, "equivalence: dimension mismatch");
  }
  if (!p.full_dimensional() || !q.full_dimensional()) {
    fail(ErrorKind::Precondition,
         "equivalence needs full-dimensional (big) bodies");
  }
  EquivalenceReport report;
  report.model = "polytope dim " + std::to_string(p.dim());
  report.n = p.dim();
  report.approximate = false;
  report.sequence = mixed_volume_sequence(p, q);
  report.inequalities = check_inequalities(report.sequence);
  report.holds[0] = report.inequalities.log_concavity_equalities;
  report.holds[1] = report.inequalities.power_chain_equalities;
  report.holds[2] = report.inequalities.endpoint_equality;
  report.bm = check_bm_superadditivity(p, q);
  report.holds[3] = report.bm.equality;
  const HomothetyResult homothety = homothety_detect(p, q);
  if (homothety.witness) report.scale = homothety.witness->scale;
  report.holds[4] = homothety.witness.has_value();
  report.holds[5] = surface_measures_proportional(p.cached_surface(),
                                                  q.cached_surface())
                        .has_value();
  report.consistent = true;
  for (const bool h : report.holds) {
    if (h != report.holds[0]) report.consistent = false;
  }
  return report;
}

InjectivityScan power_map_injectivity_scan(const MultiProjModel& model,
                                           uint32_t sample_count,
                                           uint64_t seed) {
  const MultiProjOracle oracle = make_multiproj_oracle(model);
  const uint32_t h = model.basis_dim();
  Rng rng(seed);
  InjectivityScan scan;
  for (uint32_t i = 0; i < sample_count; ++i) {
    const ClassVector alpha = sample_big_class(rng, h);
    ClassVector beta;
    if (i % 4 == 3) {
      Rat c(rng.uniform_int(1, 4), rng.uniform_int(1, 4));
      c.canonicalize();
      beta = scale_class(alpha, c);
    } else {
      beta = sample_big_class(rng, h);
    }
    const bool classes_parallel =
        proportionality_check(alpha, beta).has_value();
    const bool powers_parallel =
        vector_proportionality(power_functional(oracle, alpha),
                               power_functional(oracle, beta))
            .has_value();
    ++scan.samples;
    if (classes_parallel != powers_parallel) {
      ++scan.counterexamples;
      scan.details.push_back("alpha=" + format_class(alpha) +
                             " beta=" + format_class(beta) +
                             " classes_parallel=" +
                             (classes_parallel ? "yes" : "no") +
                             " powers_parallel=" +
                             (powers_parallel ? "yes" : "no"));
    }
  }
  return scan;
}

InjectivityScan power_map_injectivity_scan_polytopes(uint32_t dim,
                                                     uint32_t sample_count,
                                                     uint64_t seed) {
  Rng rng(seed);
  InjectivityScan scan;
  for (uint32_t i = 0; i < sample_count; ++i) {
    const Polytope p = sample_lattice_polytope(rng, dim);
    Polytope q = Polytope::from_points(dim, {std::vector<Rat>(dim, Rat(0))});
    if (i % 4 == 3) {
      Rat c(rng.uniform_int(1, 6), rng.uniform_int(1, 2));
      c.canonicalize();
      std::vector<Rat> shift(dim);
      for (uint32_t j = 0; j < dim; ++j) shift[j] = Rat(rng.uniform_int(0, 3));
      q = translate_polytope(scale_polytope(p, c), shift);
    } else {
      q = sample_lattice_polytope(rng, dim);
    }
    const bool classes_parallel = homothety_detect(p, q).witness.has_value();
    const bool powers_parallel =
        surface_measures_proportional(p.cached_surface(), q.cached_surface())
            .has_value();
    ++scan.samples;
    if (classes_parallel != powers_parallel) {
      ++scan.counterexamples;
      scan.details.push_back("P=" + format_vertices(p) +
                             " Q=" + format_vertices(q) + " homothety=" +
                             (classes_parallel ? "yes" : "no") +
                             " measures_parallel=" +
                             (powers_parallel ? "yes" : "no"));
    }
  }
  return scan;
}

ClassVector sample_big_class(Rng& rng, uint32_t basis_dim) {
  std::vector<Rat> coords(basis_dim);
  for (Rat& c : coords) c = Rat(rng.uniform_int(1, 10));
  return ClassVector(std::move(coords));
}

}  // namespace kt
