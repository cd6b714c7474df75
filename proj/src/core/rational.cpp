#include "core/rational.hpp"

#include <sstream>

#include "core/error.hpp"

namespace kt {

namespace {

bool parse_integer(const std::string& text, Int& out) {
  if (text.empty()) return false;
  // mpz accepts leading whitespace and other bases, but rejects '+'; be
  // stricter on the digits and strip an explicit plus ourselves.
  std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  out = Int(text[0] == '+' ? text.substr(1) : text, 10);
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const std::size_t slash = text.find('/');
  Int num, den(1);
  bool ok = false;
  if (slash == std::string::npos) {
    ok = parse_integer(text, num);
  } else {
    ok = parse_integer(text.substr(0, slash), num) &&
         parse_integer(text.substr(slash + 1), den);
    if (ok && den == 0) {
      fail(ErrorKind::Parse, "invalid rational '" + text + "': zero denominator");
    }
    if (ok && den < 0) {
      // Keep the sign in the numerator.
      num = -num;
      den = -den;
    }
  }
  if (!ok) {
    fail(ErrorKind::Parse, "invalid rational literal '" + text + "'");
  }
  Rat value(num, den);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rat& value) {
  // Values built through the mpq_class(num, den) constructor are not
  // automatically reduced; never leak a non-canonical form.
  Rat canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

std::string format_rational_vector(const std::vector<Rat>& values,
                                   const char* separator) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << separator;
    out << format_rational(values[i]);
  }
  return out.str();
}

std::optional<Rat> rational_root(const Rat& value, unsigned degree) {
  if (degree == 0) fail(ErrorKind::Precondition, "rational_root: degree must be positive");
  if (value < 0) return std::nullopt;
  if (value == 0) return Rat(0);
  Int num_root, den_root;
  const int num_exact =
      mpz_root(num_root.get_mpz_t(), value.get_num().get_mpz_t(), degree);
  if (!num_exact) return std::nullopt;
  const int den_exact =
      mpz_root(den_root.get_mpz_t(), value.get_den().get_mpz_t(), degree);
  if (!den_exact) return std::nullopt;
  Rat root(num_root, den_root);
  root.canonicalize();
  return root;
}

Int binomial(uint32_t n, uint32_t k) {
  if (k > n) return Int(0);
  Int result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Int factorial(uint32_t n) {
  Int result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Rat pow_rat(const Rat& base, uint32_t exponent) {
  Rat result(1);
  Rat acc = base;
  uint32_t e = exponent;
  while (e > 0) {
    if (e & 1u) result *= acc;
    acc *= acc;
    e >>= 1u;
  }
  return result;
}

}  // namespace kt
