#include "core/intersect.hpp"

#include <sstream>

#include "core/error.hpp"

namespace kt {

ClassVector scale_class(const ClassVector& v, const Rat& c) {
  ClassVector out = v;
  for (auto& x : out.coords) x *= c;
  return out;
}

ClassVector add_classes(const ClassVector& a, const ClassVector& b) {
  if (a.basis_dim() != b.basis_dim()) {
    fail(ErrorKind::Precondition, "class addition: basis dimension mismatch");
  }
  ClassVector out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

IntersectionOracle::IntersectionOracle(uint32_t n, uint32_t basis_dim)
    : n_(n), basis_dim_(basis_dim) {
  if (n == 0) fail(ErrorKind::Precondition, "oracle: dimension n must be positive");
  if (basis_dim == 0) {
    fail(ErrorKind::Precondition, "oracle: basis dimension must be positive");
  }
}

namespace {

// Multilinear extension: sum over ordered basis index tuples, pruning zero
// partial products. Depth-first over the argument list, tracking the basis
// multiplicity vector for the monomial lookup at the leaves.
void eval_recurse(const IntersectionOracle& oracle,
                  std::span<const ClassVector> classes, std::size_t depth,
                  std::vector<uint32_t>& powers, const Rat& partial, Rat& total) {
  if (depth == classes.size()) {
    total += partial * oracle.monomial(powers);
    return;
  }
  const auto& coords = classes[depth].coords;
  for (uint32_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    powers[i] += 1;
    eval_recurse(oracle, classes, depth + 1, powers, partial * coords[i], total);
    powers[i] -= 1;
  }
}

}  // namespace

Rat IntersectionOracle::eval(std::span<const ClassVector> classes) const {
  if (classes.size() != n_) {
    fail(ErrorKind::Precondition,
         "eval_product: expected " + std::to_string(n_) + " classes, got " +
             std::to_string(classes.size()));
  }
  for (const auto& c : classes) {
    if (c.basis_dim() != basis_dim_) {
      fail(ErrorKind::Precondition,
           "eval_product: class has basis dimension " +
               std::to_string(c.basis_dim()) + ", oracle expects " +
               std::to_string(basis_dim_));
    }
  }
  std::vector<uint32_t> powers(basis_dim_, 0);
  Rat total(0);
  eval_recurse(*this, classes, 0, powers, Rat(1), total);
  return total;
}

MultiProjModel::MultiProjModel(std::vector<uint32_t> dims)
    : factor_dims(std::move(dims)) {
  if (factor_dims.empty()) {
    fail(ErrorKind::Precondition, "multiproj model: factor list must be nonempty");
  }
  for (const uint32_t d : factor_dims) {
    if (d == 0) {
      fail(ErrorKind::Precondition, "multiproj model: factor dimensions must be >= 1");
    }
  }
}

uint32_t MultiProjModel::n() const {
  uint32_t total = 0;
  for (const uint32_t d : factor_dims) total += d;
  return total;
}

std::string MultiProjModel::describe() const {
  std::ostringstream out;
  out << "multiproj [";
  for (std::size_t i = 0; i < factor_dims.size(); ++i) {
    if (i) out << ",";
    out << factor_dims[i];
  }
  out << "]";
  return out.str();
}

MultiProjOracle::MultiProjOracle(MultiProjModel model)
    : IntersectionOracle(model.n(), model.basis_dim()), model_(std::move(model)) {}

Rat MultiProjOracle::monomial(const std::vector<uint32_t>& powers) const {
  // H_1^{k_1}...H_m^{k_m} integrates to 1 exactly when k_i == n_i for all i;
  // any excess power vanishes by the ring relation H_i^{n_i + 1} = 0.
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] != model_.factor_dims[i]) return Rat(0);
  }
  return Rat(1);
}

TableOracle::TableOracle(uint32_t n, uint32_t basis_dim,
                         std::map<std::vector<uint32_t>, Rat> entries,
                         bool approximate)
    : IntersectionOracle(n, basis_dim),
      entries_(std::move(entries)),
      approximate_(approximate) {
  for (const auto& [powers, value] : entries_) {
    if (powers.size() != basis_dim) {
      fail(ErrorKind::Precondition, "table oracle: multi-index length mismatch");
    }
    uint32_t total = 0;
    for (const uint32_t p : powers) total += p;
    if (total != n) {
      fail(ErrorKind::Precondition,
           "table oracle: multi-index degree must equal n");
    }
    (void)value;
  }
}

Rat TableOracle::monomial(const std::vector<uint32_t>& powers) const {
  const auto it = entries_.find(powers);
  return it == entries_.end() ? Rat(0) : it->second;
}

Rat eval_product(const IntersectionOracle& oracle,
                 std::span<const ClassVector> classes) {
  return oracle.eval(classes);
}

KTSequence kt_sequence(const IntersectionOracle& oracle, const ClassVector& alpha,
                       const ClassVector& beta) {
  const uint32_t n = oracle.n();
  KTSequence seq;
  seq.s.reserve(n + 1);
  for (uint32_t k = 0; k <= n; ++k) {
    std::vector<ClassVector> args;
    args.reserve(n);
    for (uint32_t i = 0; i < k; ++i) args.push_back(alpha);
    for (uint32_t i = k; i < n; ++i) args.push_back(beta);
    seq.s.push_back(oracle.eval(args));
  }
  return seq;
}

MultiProjOracle make_multiproj_oracle(const MultiProjModel& model) {
  return MultiProjOracle(model);
}

ConeMembership cone_membership(const MultiProjModel& model, const ClassVector& v) {
  if (v.basis_dim() != model.basis_dim()) {
    fail(ErrorKind::Precondition, "cone_membership: basis dimension mismatch");
  }
  ConeMembership result;
  result.is_nef = true;
  bool strictly_positive = true;
  for (const Rat& c : v.coords) {
    if (c < 0) result.is_nef = false;
    if (c <= 0) strictly_positive = false;
  }
  result.is_big = result.is_nef && strictly_positive;
  return result;
}

}  // namespace kt
