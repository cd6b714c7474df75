#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/intersect.hpp"
#include "core/polytope.hpp"
#include "core/rng.hpp"

namespace kt {

// Governs equality decisions. Exact mode compares rational defects to zero
// literally; approximate mode (float-valued user tables) compares them to a
// relative tolerance. Inequality directions are always decided exactly.
struct DecisionPolicy {
  bool approximate = false;
  Rat tolerance = Rat(0);

  static DecisionPolicy exact() { return {}; }
  static DecisionPolicy with_tolerance(double tol);

  // Is `value` zero, relative to a magnitude reference for the quantity it
  // was subtracted from?
  bool is_zero(const Rat& value, const Rat& scale) const;
};

// Defects of the full inequality chain for one s-sequence. A defect of
// exactly zero is an equality; positivity of every defect is the chain
// itself.
struct InequalityReport {
  uint32_t n = 0;
  std::vector<Rat> log_concavity_defects;  // s_k^2 - s_{k-1}s_{k+1}, k = 1..n-1
  std::vector<Rat> power_chain_defects;    // s_k^n - s_0^{n-k}s_n^k, k = 0..n
  Rat endpoint_defect;                     // s_{n-1}^n - s_0 s_n^{n-1}
  std::vector<Rat> ratio_chain;            // s_{k+1}/s_k, k = 0..n-1
  bool log_concavity_equalities = false;
  bool power_chain_equalities = false;
  bool endpoint_equality = false;

  bool operator==(const InequalityReport&) const = default;
};

InequalityReport check_inequalities(const KTSequence& s,
                                    const DecisionPolicy& policy = {});

// Volume superadditivity vol(a+b)^{1/n} >= vol(a)^{1/n} + vol(b)^{1/n}.
// The n-th roots are never evaluated: equality here is equivalent to the
// power-chain equalities, so the flag comes from those exact defects. The
// identity vol(a+b) = sum_k C(n,k) s_k is multilinear bookkeeping and must
// hold on the nose; a nonzero identity_defect means the model is broken.
struct BMResult {
  Rat vol_sum;
  Rat identity_defect;
  bool equality = false;

  bool operator==(const BMResult&) const = default;
};

BMResult check_bm_superadditivity(const IntersectionOracle& oracle,
                                  const ClassVector& alpha,
                                  const ClassVector& beta,
                                  const DecisionPolicy& policy = {});
BMResult check_bm_superadditivity(const Polytope& p, const Polytope& q);

// Ratio b = c * a on coordinates, if it exists.
std::optional<Rat> proportionality_check(const ClassVector& alpha,
                                         const ClassVector& beta,
                                         const DecisionPolicy& policy = {});

// The linear functional gamma -> a^{n-1} . gamma evaluated on the basis.
std::vector<Rat> power_functional(const IntersectionOracle& oracle,
                                  const ClassVector& alpha);

// Common ratio to[i] = c * from[i] over all coordinates, with matching zero
// support; decided under the policy.
std::optional<Rat> vector_proportionality(const std::vector<Rat>& from,
                                          const std::vector<Rat>& to,
                                          const DecisionPolicy& policy = {});

// Six equivalent characterizations of a proportional nef-big pair, decided
// independently and cross-checked. The labels index the `holds` array.
inline constexpr std::array<const char*, 6> kEquivalenceLabels = {
    "log_concavity_equalities", "power_chain_equalities", "endpoint_equality",
    "volume_superadditivity",   "classes_proportional",   "powers_proportional",
};

struct EquivalenceReport {
  std::string model;
  uint32_t n = 0;
  bool approximate = false;
  KTSequence sequence;
  InequalityReport inequalities;
  BMResult bm;
  std::array<bool, 6> holds{};
  std::optional<Rat> scale;          // witness when classes_proportional holds
  std::vector<Rat> power_alpha;      // power functionals (ring models only)
  std::vector<Rat> power_beta;
  bool consistent = false;           // all six statuses agree

  bool operator==(const EquivalenceReport&) const = default;
};

EquivalenceReport equivalence_report(const IntersectionOracle& oracle,
                                     const std::string& model_name,
                                     const ClassVector& alpha,
                                     const ClassVector& beta,
                                     const DecisionPolicy& policy = {});
EquivalenceReport equivalence_report(const Polytope& p, const Polytope& q);

// Random scan for a violation of: power functionals proportional iff the
// classes are. A quarter of the draws are proportional pairs by
// construction so both directions get exercised.
struct InjectivityScan {
  uint32_t samples = 0;
  uint32_t counterexamples = 0;
  std::vector<std::string> details;  // serialized failing pairs

  bool operator==(const InjectivityScan&) const = default;
};

InjectivityScan power_map_injectivity_scan(const MultiProjModel& model,
                                           uint32_t sample_count, uint64_t seed);
InjectivityScan power_map_injectivity_scan_polytopes(uint32_t dim,
                                                     uint32_t sample_count,
                                                     uint64_t seed);

// Random nef-big class with integer coordinates in [1, 10].
ClassVector sample_big_class(Rng& rng, uint32_t basis_dim);

}  // namespace kt
