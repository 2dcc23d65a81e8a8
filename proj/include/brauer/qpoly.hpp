#pragma once

// Exact integer polynomials in the indeterminate q, cyclotomic polynomials
// and Phi_d-part arithmetic.  Coefficients are arbitrary-precision integers;
// there is no floating point and no inexact division anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

using Integer = boost::multiprecision::cpp_int;

class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(Integer constant) {
    if (constant != 0) coeff_.push_back(std::move(constant));
  }
  explicit QPolynomial(long constant) : QPolynomial(Integer(constant)) {}

  // Coefficients in ascending degree; trailing zeros are stripped so the
  // representation is canonical (zero polynomial = empty sequence).
  static QPolynomial from_coefficients(std::vector<Integer> coeff) {
    QPolynomial p;
    p.coeff_ = std::move(coeff);
    p.normalize();
    return p;
  }

  static QPolynomial monomial(std::size_t degree, Integer coeff = Integer(1)) {
    if (coeff == 0) return {};
    QPolynomial p;
    p.coeff_.assign(degree + 1, Integer(0));
    p.coeff_.back() = std::move(coeff);
    return p;
  }

  bool is_zero() const { return coeff_.empty(); }

  // Degree of the zero polynomial is undefined.
  std::size_t degree() const {
    if (is_zero()) throw std::invalid_argument("degree of zero polynomial");
    return coeff_.size() - 1;
  }

  const std::vector<Integer>& coefficients() const { return coeff_; }

  Integer coefficient(std::size_t i) const {
    return i < coeff_.size() ? coeff_[i] : Integer(0);
  }

  Integer leading_coefficient() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return coeff_.back();
  }

  Integer evaluate(const Integer& x) const {
    Integer acc(0);
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
    std::vector<Integer> c(std::max(a.coeff_.size(), b.coeff_.size()), Integer(0));
    for (std::size_t i = 0; i < a.coeff_.size(); ++i) c[i] += a.coeff_[i];
    for (std::size_t i = 0; i < b.coeff_.size(); ++i) c[i] += b.coeff_[i];
    return from_coefficients(std::move(c));
  }

  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
    std::vector<Integer> c(std::max(a.coeff_.size(), b.coeff_.size()), Integer(0));
    for (std::size_t i = 0; i < a.coeff_.size(); ++i) c[i] += a.coeff_[i];
    for (std::size_t i = 0; i < b.coeff_.size(); ++i) c[i] -= b.coeff_[i];
    return from_coefficients(std::move(c));
  }

  friend QPolynomial operator-(const QPolynomial& a) { return QPolynomial() - a; }

  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.coeff_.size() + b.coeff_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.coeff_.size(); ++i)
      for (std::size_t j = 0; j < b.coeff_.size(); ++j) c[i + j] += a.coeff_[i] * b.coeff_[j];
    return from_coefficients(std::move(c));
  }

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) {
    return a.coeff_ == b.coeff_;
  }
  friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }

  // Exact division: returns nothing when b does not divide a over the
  // integers.  Never truncates.
  friend std::optional<QPolynomial> try_divide(const QPolynomial& a, const QPolynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (a.is_zero()) return QPolynomial();
    if (a.coeff_.size() < b.coeff_.size()) return std::nullopt;
    std::vector<Integer> rem = a.coeff_;
    std::vector<Integer> quot(a.coeff_.size() - b.coeff_.size() + 1, Integer(0));
    const Integer& lead = b.coeff_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
      Integer& top = rem[k + b.coeff_.size() - 1];
      if (top % lead != 0) return std::nullopt;
      Integer q = top / lead;
      quot[k] = q;
      if (q != 0)
        for (std::size_t i = 0; i < b.coeff_.size(); ++i) rem[k + i] -= q * b.coeff_[i];
    }
    for (const Integer& r : rem)
      if (r != 0) return std::nullopt;
    return from_coefficients(std::move(quot));
  }

  friend QPolynomial operator/(const QPolynomial& a, const QPolynomial& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::domain_error("non-exact polynomial division");
    return *q;
  }

  friend bool divides(const QPolynomial& b, const QPolynomial& a) {
    return try_divide(a, b).has_value();
  }

  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const QPolynomial& p) {
    return os << p.to_string();
  }

 private:
  void normalize() {
    while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
  }

  std::vector<Integer> coeff_;
};

inline std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeff_.size(); i-- > 0;) {
    const Integer& c = coeff_[i];
    if (c == 0) continue;
    Integer a = c < 0 ? Integer(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    const bool unit = (a == 1);
    if (i == 0) {
      out += a.str();
    } else {
      if (!unit) {
        out += a.str();
        out += "*";
      }
      out += "q";
      if (i > 1) {
        out += "^";
        out += std::to_string(i);
      }
    }
  }
  return out;
}

// Grammar: <int>, q, q^<int>, products with '*', sums with '+'/'-'.
// Whitespace is insignificant.
inline QPolynomial parse_qpoly(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial text");

  std::size_t pos = 0;
  auto parse_factor = [&]() -> QPolynomial {
    if (pos >= s.size()) throw std::invalid_argument("truncated polynomial: " + text);
    if (s[pos] == 'q') {
      ++pos;
      std::size_t deg = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("missing exponent: " + text);
        deg = std::stoul(s.substr(start, pos - start));
      }
      return QPolynomial::monomial(deg);
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected coefficient or q: " + text);
    return QPolynomial(Integer(s.substr(start, pos - start)));
  };
  auto parse_term = [&]() -> QPolynomial {
    QPolynomial term = parse_factor();
    while (pos < s.size() && s[pos] == '*') {
      ++pos;
      term = term * parse_factor();
    }
    return term;
  };

  QPolynomial result;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  while (true) {
    QPolynomial term = parse_term();
    result = negative ? result - term : result + term;
    if (pos >= s.size()) break;
    if (s[pos] == '+')
      negative = false;
    else if (s[pos] == '-')
      negative = true;
    else
      throw std::invalid_argument("unexpected character in polynomial: " + text);
    ++pos;
  }
  return result;
}

// d-th cyclotomic polynomial, by exact division of q^d - 1 by the
// cyclotomic polynomials of the proper divisors of d.
inline const QPolynomial& cyclotomic(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclotomic(0)");
  static std::map<unsigned, QPolynomial> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  QPolynomial p = QPolynomial::monomial(d) - QPolynomial(1);
  for (unsigned e = 1; e < d; ++e)
    if (d % e == 0) p = p / cyclotomic(e);
  return cache.emplace(d, std::move(p)).first->second;
}

// Largest a with Phi_d^a dividing p.
inline unsigned phi_part(const QPolynomial& p, unsigned d) {
  if (p.is_zero()) throw std::invalid_argument("phi_part of zero polynomial");
  const QPolynomial& phi = cyclotomic(d);
  unsigned a = 0;
  QPolynomial rest = p;
  while (true) {
    auto q = try_divide(rest, phi);
    if (!q) return a;
    rest = std::move(*q);
    ++a;
  }
}

// Phi_d-valuation of the group order minus that of the character degree.
inline unsigned defect(const QPolynomial& deg, const QPolynomial& order, unsigned d) {
  if (deg.is_zero() || order.is_zero())
    throw std::invalid_argument("defect of zero polynomial");
  unsigned a = phi_part(order, d);
  unsigned b = phi_part(deg, d);
  if (b > a)
    throw std::domain_error("inconsistent-input: character degree Phi-part exceeds group order");
  return a - b;
}

// True iff Phi_d divides p1 - p2 exactly; a sufficient condition for the
// degrees to be congruent modulo every prime dividing Phi_d(q).
inline bool congruent_mod_phi(const QPolynomial& p1, const QPolynomial& p2, unsigned d) {
  QPolynomial diff = p1 - p2;
  if (diff.is_zero()) return true;
  return divides(cyclotomic(d), diff);
}

}  // namespace brauer
