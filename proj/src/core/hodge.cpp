#include "core/hodge.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace kt {

namespace {

void require_square(const HermitianForm& a, const char* who) {
  if (a.dim == 0 || a.entries.size() != a.dim) {
    fail(ErrorKind::Precondition, std::string(who) + ": malformed matrix");
  }
  for (const auto& row : a.entries) {
    if (row.size() != a.dim) {
      fail(ErrorKind::Precondition, std::string(who) + ": malformed matrix");
    }
  }
}

void require_same_dim(const HermitianForm& a, const HermitianForm& b,
                      const char* who) {
  if (a.dim != b.dim) {
    fail(ErrorKind::Precondition, std::string(who) + ": dimension mismatch");
  }
}

void require_posdef(const HermitianForm& a, const char* who) {
  if (!positive_definite(a)) {
    fail(ErrorKind::Precondition,
         std::string(who) + ": matrix is not positive definite");
  }
}

// LU with partial pivoting; dims here never exceed single digits.
Complex lu_determinant(ComplexMat a) {
  const std::size_t n = a.size();
  Complex det(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) == 0.0) return Complex(0.0, 0.0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const Complex factor = a[row][col] / a[col][col];
      for (std::size_t j = col + 1; j < n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  return det;
}

ComplexMat lu_inverse(const ComplexMat& src) {
  const std::size_t n = src.size();
  ComplexMat a = src;
  ComplexMat inv(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Complex(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) == 0.0) {
      fail(ErrorKind::Precondition, "matrix inverse: singular input");
    }
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Complex scale = Complex(1.0, 0.0) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const Complex factor = a[row][col];
      if (factor == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

ComplexMat minor_matrix(const ComplexMat& a, std::size_t drop_row,
                        std::size_t drop_col) {
  const std::size_t n = a.size();
  ComplexMat m(n - 1, std::vector<Complex>(n - 1));
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == drop_row) continue;
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == drop_col) continue;
      m[r][c++] = a[i][j];
    }
    ++r;
  }
  return m;
}

}  // namespace

HermitianForm HermitianForm::zero(uint32_t dim) {
  HermitianForm form;
  form.dim = dim;
  form.entries.assign(dim, std::vector<Complex>(dim, Complex(0.0, 0.0)));
  return form;
}

HermitianForm HermitianForm::identity(uint32_t dim) {
  HermitianForm form = zero(dim);
  for (uint32_t i = 0; i < dim; ++i) form.entries[i][i] = Complex(1.0, 0.0);
  return form;
}

HermitianForm HermitianForm::diagonal(const std::vector<double>& values) {
  HermitianForm form = zero(static_cast<uint32_t>(values.size()));
  for (uint32_t i = 0; i < form.dim; ++i) {
    form.entries[i][i] = Complex(values[i], 0.0);
  }
  return form;
}

HermitianForm HermitianForm::from_entries(ComplexMat entries) {
  HermitianForm form;
  form.dim = static_cast<uint32_t>(entries.size());
  form.entries = std::move(entries);
  require_square(form, "HermitianForm");
  double scale = 0;
  for (const auto& row : form.entries) {
    for (const Complex& x : row) scale = std::max(scale, std::abs(x));
  }
  const double budget = 1e-9 * std::max(1.0, scale);
  for (uint32_t i = 0; i < form.dim; ++i) {
    for (uint32_t j = i; j < form.dim; ++j) {
      if (std::abs(form.entries[i][j] - std::conj(form.entries[j][i])) > budget) {
        fail(ErrorKind::Precondition,
             "HermitianForm: entries are not conjugate-symmetric at (" +
                 std::to_string(i) + "," + std::to_string(j) + ")");
      }
      const Complex mean =
          0.5 * (form.entries[i][j] + std::conj(form.entries[j][i]));
      form.entries[i][j] = mean;
      form.entries[j][i] = std::conj(mean);
    }
    form.entries[i][i] = Complex(form.entries[i][i].real(), 0.0);
  }
  return form;
}

HermitianForm add_forms(const HermitianForm& a, const HermitianForm& b) {
  require_same_dim(a, b, "add_forms");
  HermitianForm out = a;
  for (uint32_t i = 0; i < a.dim; ++i) {
    for (uint32_t j = 0; j < a.dim; ++j) out.entries[i][j] += b.entries[i][j];
  }
  return out;
}

HermitianForm scale_form(const HermitianForm& a, double c) {
  HermitianForm out = a;
  for (auto& row : out.entries) {
    for (Complex& x : row) x *= c;
  }
  return out;
}

ComplexMat multiply(const HermitianForm& a, const HermitianForm& b) {
  require_same_dim(a, b, "multiply");
  const uint32_t n = a.dim;
  ComplexMat out(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t k = 0; k < n; ++k) {
      const Complex aik = a.entries[i][k];
      if (aik == Complex(0.0, 0.0)) continue;
      for (uint32_t j = 0; j < n; ++j) out[i][j] += aik * b.entries[k][j];
    }
  }
  return out;
}

double frobenius_norm(const HermitianForm& a) {
  double sum = 0;
  for (const auto& row : a.entries) {
    for (const Complex& x : row) sum += std::norm(x);
  }
  return std::sqrt(sum);
}

double determinant(const HermitianForm& a) {
  require_square(a, "determinant");
  return lu_determinant(a.entries).real();
}

bool positive_definite(const HermitianForm& a) {
  require_square(a, "positive_definite");
  for (uint32_t k = 1; k <= a.dim; ++k) {
    ComplexMat leading(k, std::vector<Complex>(k));
    for (uint32_t i = 0; i < k; ++i) {
      for (uint32_t j = 0; j < k; ++j) leading[i][j] = a.entries[i][j];
    }
    if (lu_determinant(std::move(leading)).real() <= kMinorFloor) return false;
  }
  return true;
}

std::vector<double> eigenvalues(const HermitianForm& a) {
  require_square(a, "eigenvalues");
  const uint32_t n = a.dim;
  ComplexMat m = a.entries;
  const double scale = std::max(frobenius_norm(a), 1.0);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (uint32_t p = 0; p < n; ++p) {
      for (uint32_t q = p + 1; q < n; ++q) off += std::norm(m[p][q]);
    }
    if (std::sqrt(off) < 1e-14 * scale) break;
    for (uint32_t p = 0; p < n; ++p) {
      for (uint32_t q = p + 1; q < n; ++q) {
        const Complex apq = m[p][q];
        const double g = std::abs(apq);
        if (g < 1e-18 * scale) continue;
        const double app = m[p][p].real();
        const double aqq = m[q][q].real();
        const Complex phase = apq / g;
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary U = diag(phase, 1) * [[c, s], [-s, c]] on the (p,q) plane.
        const Complex upp = phase * c;
        const Complex upq = phase * s;
        for (uint32_t r = 0; r < n; ++r) {
          const Complex mrp = m[r][p];
          const Complex mrq = m[r][q];
          m[r][p] = mrp * upp - mrq * s;
          m[r][q] = mrp * upq + mrq * c;
        }
        for (uint32_t r = 0; r < n; ++r) {
          const Complex mpr = m[p][r];
          const Complex mqr = m[q][r];
          m[p][r] = std::conj(upp) * mpr - s * mqr;
          m[q][r] = std::conj(upq) * mpr + c * mqr;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (uint32_t i = 0; i < n; ++i) values[i] = m[i][i].real();
  std::sort(values.begin(), values.end());
  return values;
}

HermitianForm adjugate(const HermitianForm& a) {
  require_square(a, "adjugate");
  if (a.dim < 2) fail(ErrorKind::Precondition, "adjugate: dim must be >= 2");
  const uint32_t n = a.dim;
  ComplexMat adj(n, std::vector<Complex>(n));
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      const Complex cofactor = lu_determinant(minor_matrix(a.entries, j, i));
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj[i][j] = sign * cofactor;
    }
  }
  return HermitianForm::from_entries(std::move(adj));
}

double check_power_det_identity(const HermitianForm& a, const HermitianForm& b) {
  require_same_dim(a, b, "check_power_det_identity");
  require_posdef(a, "check_power_det_identity");
  require_posdef(b, "check_power_det_identity");
  const double lhs = determinant(adjugate(a)) / determinant(adjugate(b));
  const double rhs = std::pow(determinant(a) / determinant(b),
                              static_cast<double>(a.dim) - 1.0);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

AmGmResult amgm_bound(const HermitianForm& m, const HermitianForm& theta) {
  require_same_dim(m, theta, "amgm_bound");
  require_posdef(m, "amgm_bound: base form");
  const HermitianForm sum = add_forms(m, theta);
  const auto sum_eigen = eigenvalues(sum);
  const double psd_floor =
      -kInequalitySlack * std::max(1.0, frobenius_norm(sum));
  if (sum_eigen.front() < psd_floor) {
    fail(ErrorKind::Precondition,
         "amgm_bound: perturbed form is not positive semidefinite "
         "(min eigenvalue " +
             std::to_string(sum_eigen.front()) + ")");
  }
  const uint32_t n = m.dim;
  AmGmResult result;
  result.m_norm = frobenius_norm(m);
  result.theta_norm = frobenius_norm(theta);
  const double det_m = determinant(m);
  const double det_sum = std::max(determinant(sum), 0.0);
  result.lhs = std::pow(det_sum / det_m, 1.0 / n);
  const ComplexMat inv = lu_inverse(m.entries);
  Complex trace(0.0, 0.0);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t k = 0; k < n; ++k) trace += inv[i][k] * theta.entries[k][i];
  }
  result.rhs = 1.0 + trace.real() / n;
  if (result.lhs > result.rhs + kInequalitySlack) {
    fail(ErrorKind::Consistency,
         "amgm_bound violated: lhs " + std::to_string(result.lhs) + " > rhs " +
             std::to_string(result.rhs));
  }
  result.equality = (result.rhs - result.lhs) <= kInequalitySlack;
  return result;
}

HermitianForm recover_from_adjugate(const HermitianForm& m) {
  require_square(m, "recover_from_adjugate");
  if (m.dim < 2) {
    fail(ErrorKind::Precondition, "recover_from_adjugate: dim must be >= 2");
  }
  require_posdef(m, "recover_from_adjugate");
  const double det_m = determinant(m);
  const double det_a = std::pow(det_m, 1.0 / (m.dim - 1.0));
  ComplexMat inv = lu_inverse(m.entries);
  for (auto& row : inv) {
    for (Complex& x : row) x *= det_a;
  }
  return HermitianForm::from_entries(std::move(inv));
}

HermitianForm random_hermitian(Rng& rng, uint32_t dim) {
  ComplexMat entries(dim, std::vector<Complex>(dim));
  for (uint32_t i = 0; i < dim; ++i) {
    entries[i][i] = Complex(2.0 * rng.uniform01() - 1.0, 0.0);
    for (uint32_t j = i + 1; j < dim; ++j) {
      const Complex x(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
      entries[i][j] = x;
      entries[j][i] = std::conj(x);
    }
  }
  return HermitianForm::from_entries(std::move(entries));
}

HermitianForm random_posdef(Rng& rng, uint32_t dim) {
  ComplexMat g(dim, std::vector<Complex>(dim));
  for (auto& row : g) {
    for (Complex& x : row) {
      x = Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
    }
  }
  // G G* plus a diagonal shift keeps the spectrum comfortably away from 0.
  ComplexMat entries(dim, std::vector<Complex>(dim, Complex(0.0, 0.0)));
  for (uint32_t i = 0; i < dim; ++i) {
    for (uint32_t j = 0; j < dim; ++j) {
      Complex sum(0.0, 0.0);
      for (uint32_t k = 0; k < dim; ++k) sum += g[i][k] * std::conj(g[j][k]);
      entries[i][j] = sum;
    }
    entries[i][i] += Complex(0.5, 0.0);
  }
  return HermitianForm::from_entries(std::move(entries));
}

Inertia rational_inertia(std::vector<std::vector<Rat>> a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) {
      fail(ErrorKind::Precondition, "inertia: matrix is not square");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i][j] != a[j][i]) {
        fail(ErrorKind::Precondition, "inertia: matrix is not symmetric");
      }
    }
  }
  Inertia inertia;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] == 0) {
      std::size_t diag = n;
      std::size_t off = n;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (diag == n && a[j][j] != 0) diag = j;
        if (off == n && a[i][j] != 0) off = j;
      }
      if (diag != n) {
        std::swap(a[diag], a[i]);
        for (auto& row : a) std::swap(row[diag], row[i]);
      } else if (off != n) {
        // Both diagonals vanish; e_i += e_off makes the pivot 2 a[i][off].
        for (std::size_t j = 0; j < n; ++j) a[i][j] += a[off][j];
        for (std::size_t j = 0; j < n; ++j) a[j][i] += a[j][off];
      } else {
        ++inertia.zeros;
        continue;
      }
    }
    const Rat pivot = a[i][i];
    if (pivot > 0) {
      ++inertia.positives;
    } else {
      ++inertia.negatives;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (a[r][i] == 0) continue;
      const Rat factor = a[r][i] / pivot;
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= factor * a[i][j];
      for (std::size_t j = 0; j < n; ++j) a[j][r] -= factor * a[j][i];
    }
  }
  return inertia;
}

GramForm gram_form(const IntersectionOracle& oracle,
                   std::span<const ClassVector> kahler) {
  const uint32_t n = oracle.n();
  const uint32_t h = oracle.basis_dim();
  if (n < 2) fail(ErrorKind::Precondition, "gram_form: needs n >= 2");
  if (kahler.size() != n - 2) {
    fail(ErrorKind::Precondition,
         "gram_form: expected " + std::to_string(n - 2) +
             " reference classes, got " + std::to_string(kahler.size()));
  }
  for (const ClassVector& w : kahler) {
    if (w.basis_dim() != h) {
      fail(ErrorKind::Precondition, "gram_form: reference class dimension mismatch");
    }
    for (const Rat& c : w.coords) {
      if (c <= 0) {
        fail(ErrorKind::Precondition,
             "gram_form: reference classes must be strictly positive");
      }
    }
  }
  std::vector<ClassVector> factors(n);
  for (uint32_t k = 0; k < n - 2; ++k) factors[k + 2] = kahler[k];
  GramForm gram;
  gram.dim = h;
  gram.entries.assign(h, std::vector<Rat>(h));
  for (uint32_t a = 0; a < h; ++a) {
    ClassVector ea(std::vector<Rat>(h, Rat(0)));
    ea.coords[a] = 1;
    factors[0] = ea;
    for (uint32_t b = a; b < h; ++b) {
      ClassVector eb(std::vector<Rat>(h, Rat(0)));
      eb.coords[b] = 1;
      factors[1] = std::move(eb);
      Rat value = oracle.eval(factors);
      gram.entries[a][b] = value;
      gram.entries[b][a] = std::move(value);
    }
  }
  return gram;
}

Inertia gram_signature(const IntersectionOracle& oracle,
                       std::span<const ClassVector> kahler) {
  return rational_inertia(gram_form(oracle, kahler).entries);
}

Rat discriminant_inequality(const IntersectionOracle& oracle,
                            const ClassVector& alpha, const ClassVector& beta,
                            std::span<const ClassVector> kahler) {
  const uint32_t n = oracle.n();
  if (n < 2) fail(ErrorKind::Precondition, "discriminant: needs n >= 2");
  if (kahler.size() != n - 2) {
    fail(ErrorKind::Precondition,
         "discriminant: expected " + std::to_string(n - 2) +
             " reference classes");
  }
  std::vector<ClassVector> factors(n);
  for (uint32_t k = 0; k < n - 2; ++k) factors[k + 2] = kahler[k];
  const auto q = [&](const ClassVector& x, const ClassVector& y) {
    factors[0] = x;
    factors[1] = y;
    return oracle.eval(factors);
  };
  const Rat q_ab = q(alpha, beta);
  Rat defect = q_ab * q_ab - q(alpha, alpha) * q(beta, beta);
  defect.canonicalize();
  return defect;
}

}  // namespace kt
