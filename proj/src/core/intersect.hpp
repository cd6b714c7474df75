#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "core/rational.hpp"

namespace kt {

// A (1,1)-class expressed in a fixed basis of the class space.
struct ClassVector {
  std::vector<Rat> coords;

  ClassVector() = default;
  explicit ClassVector(std::vector<Rat> c) : coords(std::move(c)) {}

  uint32_t basis_dim() const { return static_cast<uint32_t>(coords.size()); }

  bool operator==(const ClassVector& other) const = default;
};

ClassVector scale_class(const ClassVector& v, const Rat& c);
ClassVector add_classes(const ClassVector& a, const ClassVector& b);

// Symmetric n-multilinear intersection form on an h-dimensional class space.
// Concrete models supply the value on basis monomials; evaluation on general
// classes is multilinear extension.
class IntersectionOracle {
public:
  IntersectionOracle(uint32_t n, uint32_t basis_dim);
  virtual ~IntersectionOracle() = default;

  uint32_t n() const { return n_; }
  uint32_t basis_dim() const { return basis_dim_; }

  // Value on the basis monomial e_1^{powers[0]} ... e_h^{powers[h-1]},
  // sum(powers) == n.
  virtual Rat monomial(const std::vector<uint32_t>& powers) const = 0;

  // True for oracles built from float-valued user tables; equality decisions
  // downstream then run in tolerance mode.
  virtual bool approximate() const { return false; }

  Rat eval(std::span<const ClassVector> classes) const;

private:
  uint32_t n_;
  uint32_t basis_dim_;
};

// Product of projective spaces P^{n_1} x ... x P^{n_m}; basis H_1, ..., H_m,
// normalized so the top monomial H_1^{n_1}...H_m^{n_m} integrates to 1.
struct MultiProjModel {
  std::vector<uint32_t> factor_dims;

  explicit MultiProjModel(std::vector<uint32_t> dims);

  uint32_t n() const;
  uint32_t basis_dim() const { return static_cast<uint32_t>(factor_dims.size()); }
  std::string describe() const;
};

class MultiProjOracle final : public IntersectionOracle {
public:
  explicit MultiProjOracle(MultiProjModel model);
  Rat monomial(const std::vector<uint32_t>& powers) const override;
  const MultiProjModel& model() const { return model_; }

private:
  MultiProjModel model_;
};

// User-supplied intersection table: monomial multi-index -> value. Missing
// monomials evaluate to 0.
class TableOracle final : public IntersectionOracle {
public:
  TableOracle(uint32_t n, uint32_t basis_dim,
              std::map<std::vector<uint32_t>, Rat> entries, bool approximate);
  Rat monomial(const std::vector<uint32_t>& powers) const override;
  bool approximate() const override { return approximate_; }

private:
  std::map<std::vector<uint32_t>, Rat> entries_;
  bool approximate_;
};

// The numbers s_0, ..., s_n attached to a class pair; s_k carries k copies of
// the first class.
struct KTSequence {
  std::vector<Rat> s;

  uint32_t n() const { return static_cast<uint32_t>(s.size()) - 1; }
  bool operator==(const KTSequence& other) const = default;
};

Rat eval_product(const IntersectionOracle& oracle,
                 std::span<const ClassVector> classes);

KTSequence kt_sequence(const IntersectionOracle& oracle, const ClassVector& alpha,
                       const ClassVector& beta);

MultiProjOracle make_multiproj_oracle(const MultiProjModel& model);

struct ConeMembership {
  bool is_nef = false;
  bool is_big = false;
};

// On a product of projective spaces the nef cone is the positive orthant in
// the H_i basis; nef-and-big is its interior.
ConeMembership cone_membership(const MultiProjModel& model, const ClassVector& v);

}  // namespace kt
