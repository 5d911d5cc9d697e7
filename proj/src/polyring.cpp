#include "bondforge/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace bondforge {

LaurentPoly::LaurentPoly(long long c) {
  if (c != 0) terms_.emplace(Monomial{}, BigInt(c));
}

LaurentPoly LaurentPoly::constant(const BigInt& c) {
  LaurentPoly p;
  p.add_term(Monomial{}, c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const BigInt& c, int eA, int ea, int eb) {
  if (ea < 0 || eb < 0) throw PolyError("negative exponent on a or b");
  LaurentPoly p;
  p.add_term(Monomial{eA, ea, eb}, c);
  return p;
}

BigInt LaurentPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r;
  for (const auto& [m1, c1] : p.terms_)
    for (const auto& [m2, c2] : q.terms_)
      r.add_term(Monomial{m1.eA + m2.eA, m1.ea + m2.ea, m1.eb + m2.eb}, c1 * c2);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& q) {
  *this = *this * q;
  return *this;
}

LaurentPoly LaurentPoly::shifted_A(int shift) const {
  LaurentPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.eA + shift, m.ea, m.eb}, c);
  return r;
}

const LaurentPoly& d_loop() {
  static const LaurentPoly d = -LaurentPoly::A(2) - LaurentPoly::A(-2);
  return d;
}

LaurentPoly pow(const LaurentPoly& p, int e) {
  if (e < 0) {
    if (!p.is_monomial()) throw PolyError("not invertible");
    const auto& [m, c] = *p.terms().begin();
    if ((c != 1 && c != -1) || m.ea != 0 || m.eb != 0) throw PolyError("not invertible");
    LaurentPoly inv = LaurentPoly::monomial(c, -m.eA);
    return pow(inv, -e);
  }
  LaurentPoly result = 1;
  LaurentPoly base = p;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {

int exponent_of(const Monomial& m, Var v) {
  switch (v) {
    case Var::A: return m.eA;
    case Var::a: return m.ea;
    case Var::b: return m.eb;
  }
  return 0;
}

}  // namespace

LaurentPoly substitute(const LaurentPoly& p, Var var, const LaurentPoly& value) {
  if (var == Var::A) throw PolyError("A substitution unsupported");
  for (const auto& [m, c] : value.terms())
    if (exponent_of(m, var) != 0) throw PolyError("substituted value contains the variable");
  LaurentPoly r;
  std::map<int, LaurentPoly> powers;
  for (const auto& [m, c] : p.terms()) {
    int e = exponent_of(m, var);
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, pow(value, e)).first;
    Monomial rest = m;
    (var == Var::a ? rest.ea : rest.eb) = 0;
    LaurentPoly t;
    t.add_term(rest, c);
    r += t * it->second;
  }
  return r;
}

std::optional<int> max_degree(const LaurentPoly& p, Var var) {
  std::optional<int> best;
  for (const auto& [m, c] : p.terms()) {
    int e = exponent_of(m, var);
    if (!best || e > *best) best = e;
  }
  return best;
}

std::optional<int> min_degree(const LaurentPoly& p, Var var) {
  std::optional<int> best;
  for (const auto& [m, c] : p.terms()) {
    int e = exponent_of(m, var);
    if (!best || e < *best) best = e;
  }
  return best;
}

LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw PolyError("division by zero");
  for (const auto& [m, c] : q.terms())
    if (m.ea != 0 || m.eb != 0) throw PolyError("divisor must involve only A");
  const auto& [lead_m, lead_c] = *std::max_element(
      q.terms().begin(), q.terms().end(),
      [](const auto& x, const auto& y) { return x.first.eA < y.first.eA; });
  if (lead_c != 1 && lead_c != -1) throw PolyError("divisor leading coefficient must be a unit");

  // Long division slice by slice in (ea, eb).
  std::map<std::pair<int, int>, LaurentPoly> slices;
  for (const auto& [m, c] : p.terms())
    slices[{m.ea, m.eb}].add_term(Monomial{m.eA, 0, 0}, c);

  LaurentPoly quotient;
  const int q_low = *min_degree(q, Var::A);
  for (auto& [key, rem] : slices) {
    const int lowest_shift = *min_degree(rem, Var::A) - q_low;
    while (!rem.is_zero()) {
      const auto& [top_m, top_c] = *std::max_element(
          rem.terms().begin(), rem.terms().end(),
          [](const auto& x, const auto& y) { return x.first.eA < y.first.eA; });
      const int shift = top_m.eA - lead_m.eA;
      if (shift < lowest_shift) throw PolyError("inexact division");
      BigInt factor = top_c * lead_c;  // lead_c is +-1
      rem -= LaurentPoly::monomial(factor, shift) * q;
      quotient += LaurentPoly::monomial(factor, shift, key.first, key.second);
    }
  }
  return quotient;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, BigInt>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    const Monomial& p = x.first;
    const Monomial& q = y.first;
    if (p.ea != q.ea) return p.ea > q.ea;
    if (p.eb != q.eb) return p.eb > q.eb;
    return p.eA > q.eA;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    bool negative = c < 0;
    BigInt mag = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    auto factor = [&](char name, int e) {
      if (e == 0) return;
      std::string f(1, name);
      if (e != 1) f += "^" + std::to_string(e);
      factors.push_back(std::move(f));
    };
    factor('A', m.eA);
    factor('a', m.ea);
    factor('b', m.eb);
    bool need_coeff = mag != 1 || factors.empty();
    if (need_coeff) out << mag;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0 || need_coeff) out << '*';
      out << factors[i];
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  LaurentPoly parse() {
    skip_ws();
    if (s_.empty()) throw PolyError("empty polynomial text");
    if (s_ == "0") return {};
    LaurentPoly result;
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      Monomial m = parse_term_monomial();
      result.add_term(m, sign * coeff_);
    }
    return result;
  }

 private:
  Monomial parse_term_monomial() {
    Monomial m;
    coeff_ = 1;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff_ = parse_uint();
      any = true;
      if (peek() != '*') return m;
      ++pos_;
    }
    while (true) {
      char v = peek();
      if (v != 'A' && v != 'a' && v != 'b') {
        if (!any) throw error("expected coefficient or factor");
        throw error("expected factor after '*'");
      }
      ++pos_;
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        bool neg = false;
        if (peek() == '-') {
          neg = true;
          ++pos_;
        }
        e = static_cast<int>(parse_uint());
        if (neg) e = -e;
      }
      if (v == 'A') m.eA += e;
      else if (e < 0) throw error("negative exponent on a or b");
      else if (v == 'a') m.ea += e;
      else m.eb += e;
      any = true;
      if (peek() != '*') return m;
      ++pos_;
    }
  }

  BigInt parse_uint() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw error("expected integer");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  PolyError error(const std::string& what) const {
    return PolyError("polynomial parse error at " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  BigInt coeff_ = 1;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace bondforge
