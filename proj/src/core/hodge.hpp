#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "core/intersect.hpp"
#include "core/rng.hpp"

namespace kt {

// Tolerances for the floating-point pipeline, fixed project-wide: identities
// are held to 1e-10 relative, inequality slack is 1e-12, and the equality
// band of the AM-GM bound forces the perturbation norm under 1e-10 times the
// base norm.
inline constexpr double kIdentityRelTol = 1e-10;
inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kForcingFactor = 1e-10;
inline constexpr double kMinorFloor = 1e-12;

using Complex = std::complex<double>;
using ComplexMat = std::vector<std::vector<Complex>>;

// Pointwise Hermitian matrix picture of a (1,1)-form. Entries are kept
// exactly Hermitian: construction symmetrizes and the diagonal is real.
struct HermitianForm {
  uint32_t dim = 0;
  ComplexMat entries;

  static HermitianForm zero(uint32_t dim);
  static HermitianForm identity(uint32_t dim);
  static HermitianForm diagonal(const std::vector<double>& values);
  // Validates shape, rejects entries far from conjugate symmetry, then
  // canonicalizes the representation.
  static HermitianForm from_entries(ComplexMat entries);
};

HermitianForm add_forms(const HermitianForm& a, const HermitianForm& b);
HermitianForm scale_form(const HermitianForm& a, double c);
ComplexMat multiply(const HermitianForm& a, const HermitianForm& b);

double frobenius_norm(const HermitianForm& a);
double determinant(const HermitianForm& a);
bool positive_definite(const HermitianForm& a);

// All eigenvalues (real), ascending, via cyclic complex Jacobi rotations.
std::vector<double> eigenvalues(const HermitianForm& a);

// adj(A) with A adj(A) = det(A) I; cofactor transpose, re-Hermitianized.
HermitianForm adjugate(const HermitianForm& a);

// Relative residual of det(adj A)/det(adj B) against (det A/det B)^{n-1}.
double check_power_det_identity(const HermitianForm& a, const HermitianForm& b);

struct AmGmResult {
  double lhs = 0;         // (det(M + Theta)/det M)^{1/n}
  double rhs = 0;         // 1 + (1/n) tr(M^{-1} Theta)
  bool equality = false;  // rhs - lhs within kInequalitySlack
  double theta_norm = 0;
  double m_norm = 0;
};

// The determinant form of the arithmetic-geometric mean bound. Throws on a
// violation beyond kInequalitySlack; in the equality band the perturbation
// must be negligible, which callers assert via the returned norms.
AmGmResult amgm_bound(const HermitianForm& m, const HermitianForm& theta);

// Inverse of adjugate: the A with adj(A) = M, via det A = (det M)^{1/(n-1)}
// and A = det(A) M^{-1}.
HermitianForm recover_from_adjugate(const HermitianForm& m);

HermitianForm random_hermitian(Rng& rng, uint32_t dim);
HermitianForm random_posdef(Rng& rng, uint32_t dim);

struct Inertia {
  uint32_t positives = 0;
  uint32_t negatives = 0;
  uint32_t zeros = 0;

  bool operator==(const Inertia&) const = default;
};

// Exact inertia of a symmetric rational matrix by congruence elimination.
Inertia rational_inertia(std::vector<std::vector<Rat>> a);

// The quadratic form Q(e_a, e_b) = e_a . e_b . w_1 ... w_{n-2} on the class
// space, as an exact symmetric matrix.
struct GramForm {
  uint32_t dim = 0;
  std::vector<std::vector<Rat>> entries;
};

GramForm gram_form(const IntersectionOracle& oracle,
                   std::span<const ClassVector> kahler);

// Inertia of the Gram form; one positive direction expected on the models
// realized here.
Inertia gram_signature(const IntersectionOracle& oracle,
                       std::span<const ClassVector> kahler);

// Q(a,b)^2 - Q(a,a) Q(b,b), exact; nonnegative on nef inputs.
Rat discriminant_inequality(const IntersectionOracle& oracle,
                            const ClassVector& alpha, const ClassVector& beta,
                            std::span<const ClassVector> kahler);

}  // namespace kt
