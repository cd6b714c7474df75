#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "core/error.hpp"
#include "core/intersect.hpp"
#include "core/rng.hpp"

using namespace kt;

namespace {

// Independent oracle: expand alpha^k beta^{n-k} with explicit multinomial
// coefficients over the basis monomials instead of the library's recursive
// multilinear evaluation.
void enumerate_powers(uint32_t slots, uint32_t total,
                      std::vector<uint32_t>& prefix,
                      std::vector<std::vector<uint32_t>>& out) {
  if (prefix.size() + 1 == slots) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (uint32_t take = 0; take <= total; ++take) {
    prefix.push_back(take);
    enumerate_powers(slots, total - take, prefix, out);
    prefix.pop_back();
  }
}

Rat multinomial_oracle_sk(const IntersectionOracle& oracle,
                          const ClassVector& alpha, const ClassVector& beta,
                          uint32_t k) {
  const uint32_t n = oracle.n();
  const uint32_t h = oracle.basis_dim();
  std::vector<std::vector<uint32_t>> alpha_powers, beta_powers;
  std::vector<uint32_t> prefix;
  enumerate_powers(h, k, prefix, alpha_powers);
  enumerate_powers(h, n - k, prefix, beta_powers);

  const auto multinomial = [](uint32_t total, const std::vector<uint32_t>& parts) {
    Int value = factorial(total);
    for (const uint32_t p : parts) value /= factorial(p);
    return value;
  };

  Rat total(0);
  for (const auto& a : alpha_powers) {
    Rat coeff_a(multinomial(k, a));
    for (uint32_t i = 0; i < h; ++i) coeff_a *= pow_rat(alpha.coords[i], a[i]);
    for (const auto& b : beta_powers) {
      Rat coeff_b(multinomial(n - k, b));
      for (uint32_t i = 0; i < h; ++i) coeff_b *= pow_rat(beta.coords[i], b[i]);
      std::vector<uint32_t> powers(h);
      for (uint32_t i = 0; i < h; ++i) powers[i] = a[i] + b[i];
      total += coeff_a * coeff_b * oracle.monomial(powers);
    }
  }
  return total;
}

ClassVector cv(std::vector<int> values) {
  std::vector<Rat> coords;
  for (const int v : values) coords.emplace_back(v);
  return ClassVector(std::move(coords));
}

}  // namespace

TEST_CASE("multiproj monomial values") {
  const MultiProjOracle oracle = make_multiproj_oracle(MultiProjModel({1, 1}));
  CHECK(oracle.n() == 2);
  CHECK(oracle.basis_dim() == 2);
  CHECK(oracle.monomial({1, 1}) == 1);
  CHECK(oracle.monomial({2, 0}) == 0);
  CHECK(oracle.monomial({0, 2}) == 0);

  const MultiProjOracle mixed = make_multiproj_oracle(MultiProjModel({2, 1}));
  CHECK(mixed.n() == 3);
  CHECK(mixed.monomial({2, 1}) == 1);
  CHECK(mixed.monomial({3, 0}) == 0);
  CHECK(mixed.monomial({1, 2}) == 0);
}

TEST_CASE("multiproj volumes match the multinomial formula") {
  // vol(x1 H1 + x2 H2) on P^1 x P^1 is 2 x1 x2; on P^2 x P^1 the top
  // coefficient of (x1 H1 + x2 H2)^3 is 3 x1^2 x2.
  const MultiProjOracle p1p1 = make_multiproj_oracle(MultiProjModel({1, 1}));
  const ClassVector a = cv({1, 1});
  const ClassVector b = cv({2, 2});
  CHECK(kt_sequence(p1p1, a, a).s == std::vector<Rat>{2, 2, 2});
  CHECK(kt_sequence(p1p1, a, b).s == std::vector<Rat>{8, 4, 2});

  const MultiProjOracle p2p1 = make_multiproj_oracle(MultiProjModel({2, 1}));
  const ClassVector c = cv({1, 2});
  std::vector<ClassVector> cs(3, c);
  CHECK(eval_product(p2p1, cs) == 6);  // 3 * 1 * 2
}

TEST_CASE("kt_sequence agrees with the multinomial oracle") {
  Rng rng(314);
  for (const auto& dims : {std::vector<uint32_t>{1, 1},
                           std::vector<uint32_t>{1, 1, 1},
                           std::vector<uint32_t>{2, 1},
                           std::vector<uint32_t>{3},
                           std::vector<uint32_t>{2, 2}}) {
    const MultiProjOracle oracle = make_multiproj_oracle(MultiProjModel(dims));
    const uint32_t h = oracle.basis_dim();
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rat> ac, bc;
      for (uint32_t i = 0; i < h; ++i) {
        ac.emplace_back(rng.uniform_int(1, 9));
        bc.emplace_back(rng.uniform_int(1, 9));
      }
      const ClassVector alpha{ac}, beta{bc};
      const KTSequence seq = kt_sequence(oracle, alpha, beta);
      REQUIRE(seq.s.size() == oracle.n() + 1);
      for (uint32_t k = 0; k <= oracle.n(); ++k) {
        CHECK(seq.s[k] == multinomial_oracle_sk(oracle, alpha, beta, k));
      }
    }
  }
}

TEST_CASE("eval is symmetric and multilinear") {
  const MultiProjOracle oracle = make_multiproj_oracle(MultiProjModel({2, 1}));
  const ClassVector a = cv({1, 2});
  const ClassVector b = cv({3, 1});
  const ClassVector c = cv({2, 5});
  std::vector<ClassVector> abc{a, b, c};
  std::vector<ClassVector> cab{c, a, b};
  CHECK(eval_product(oracle, abc) == eval_product(oracle, cab));

  // Linearity in the first slot: (a + 3b, b, c) = (a,b,c) + 3 (b,b,c).
  const ClassVector combined = add_classes(a, scale_class(b, Rat(3)));
  std::vector<ClassVector> lhs{combined, b, c};
  std::vector<ClassVector> t1{a, b, c};
  std::vector<ClassVector> t2{b, b, c};
  CHECK(eval_product(oracle, lhs) ==
        eval_product(oracle, t1) + Rat(3) * eval_product(oracle, t2));
}

TEST_CASE("table oracle reproduces a ring model and defaults to zero") {
  std::map<std::vector<uint32_t>, Rat> entries;
  entries[{1, 1}] = Rat(1);
  const TableOracle table(2, 2, entries, false);
  CHECK_FALSE(table.approximate());
  CHECK(table.monomial({1, 1}) == 1);
  CHECK(table.monomial({2, 0}) == 0);

  const MultiProjOracle ring = make_multiproj_oracle(MultiProjModel({1, 1}));
  Rng rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    const ClassVector alpha = cv({rng.uniform_int(1, 9), rng.uniform_int(1, 9)});
    const ClassVector beta = cv({rng.uniform_int(1, 9), rng.uniform_int(1, 9)});
    CHECK(kt_sequence(table, alpha, beta) == kt_sequence(ring, alpha, beta));
  }
}

TEST_CASE("eval rejects wrong arity and wrong basis dimension") {
  const MultiProjOracle oracle = make_multiproj_oracle(MultiProjModel({1, 1}));
  std::vector<ClassVector> too_few{cv({1, 1})};
  CHECK_THROWS_AS((void)eval_product(oracle, too_few), Error);
  std::vector<ClassVector> bad_dim{cv({1, 1, 1}), cv({1, 1, 1})};
  CHECK_THROWS_AS((void)eval_product(oracle, bad_dim), Error);
}

TEST_CASE("cone membership on the orthant") {
  const MultiProjModel model({1, 1});
  const auto strict = cone_membership(model, cv({2, 3}));
  CHECK(strict.is_nef);
  CHECK(strict.is_big);
  const auto boundary = cone_membership(model, cv({1, 0}));
  CHECK(boundary.is_nef);
  CHECK_FALSE(boundary.is_big);
  const auto outside = cone_membership(model, cv({-1, 2}));
  CHECK_FALSE(outside.is_nef);
  CHECK_FALSE(outside.is_big);
}
