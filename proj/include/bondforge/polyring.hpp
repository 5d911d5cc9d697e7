#pragma once

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bondforge {

using BigInt = boost::multiprecision::cpp_int;

/// Raised by polynomial operations that have no exact answer.
class PolyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Var { A, a, b };

/// Exponent triple (A, a, b). Only A may be negative.
struct Monomial {
  int eA = 0;
  int ea = 0;
  int eb = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Integer polynomial, Laurent in A and ordinary in the formal
/// coefficients a and b. Zero coefficients are never stored, so two equal
/// values always have identical term maps.
class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(long long c);  // NOLINT: integers promote to constants
  static LaurentPoly constant(const BigInt& c);
  static LaurentPoly monomial(const BigInt& c, int eA, int ea = 0, int eb = 0);
  static LaurentPoly A(int e = 1) { return monomial(1, e); }
  static LaurentPoly a(int e = 1) { return monomial(1, 0, e); }
  static LaurentPoly b(int e = 1) { return monomial(1, 0, 0, e); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  BigInt coefficient(const Monomial& m) const;

  LaurentPoly& operator+=(const LaurentPoly& q);
  LaurentPoly& operator-=(const LaurentPoly& q);
  LaurentPoly& operator*=(const LaurentPoly& q);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) { return p += q; }
  friend LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) { return p -= q; }
  friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Adds c * A^eA a^ea b^eb in place.
  void add_term(const Monomial& m, const BigInt& c);

  /// Multiplies by the monomial A^shift.
  LaurentPoly shifted_A(int shift) const;

  std::string to_string() const;

 private:
  TermMap terms_;
};

/// The loop value -A^2 - A^-2.
const LaurentPoly& d_loop();

/// Binary exponentiation. Negative exponents are allowed only for monomials
/// with unit coefficient.
LaurentPoly pow(const LaurentPoly& p, int e);

/// Replaces `var` (a or b) by `value`, which must not contain `var`.
LaurentPoly substitute(const LaurentPoly& p, Var var, const LaurentPoly& value);

std::optional<int> max_degree(const LaurentPoly& p, Var var);
std::optional<int> min_degree(const LaurentPoly& p, Var var);

/// Exact quotient p / q where q involves only A and has a unit leading
/// coefficient. Throws PolyError when the division leaves a remainder.
LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& q);

/// Parses the textual grammar emitted by LaurentPoly::to_string.
LaurentPoly parse_poly(std::string_view text);

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace bondforge
