#include "repval/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace repval {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

bool parse_big_int(std::string_view text, BigInt* out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  if (pos == text.size()) return false;
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  *out = BigInt(std::string(text));
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text,
                                       int max_decimal_digits) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_big_int(text.substr(0, slash), &num)) return std::nullopt;
    if (!parse_big_int(text.substr(slash + 1), &den)) return std::nullopt;
    if (den <= 0) return std::nullopt;
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || static_cast<int>(frac.size()) > max_decimal_digits)
      return std::nullopt;
    std::string_view head = text.substr(0, dot);
    bool negative = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
      negative = head[0] == '-';
      head.remove_prefix(1);
    }
    BigInt whole = 0;
    if (!head.empty() && !parse_big_int(head, &whole)) return std::nullopt;
    BigInt frac_num;
    if (!parse_big_int(frac, &frac_num)) return std::nullopt;
    if (frac_num < 0) return std::nullopt;  // rejects "1.-5"
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational value = Rational(whole) + Rational(frac_num, den);
    return negative ? -value : value;
  }

  BigInt whole;
  if (!parse_big_int(text, &whole)) return std::nullopt;
  return Rational(whole);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  // 53 bits of mantissa make m an exact integer.
  double m = std::frexp(x, &exp);
  BigInt mant(static_cast<long long>(std::ldexp(m, 53)));
  exp -= 53;
  Rational r(mant);
  BigInt two = 2;
  if (exp >= 0) {
    r *= Rational(boost::multiprecision::pow(two, exp));
  } else {
    r /= Rational(boost::multiprecision::pow(two, -exp));
  }
  return r;
}

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

int rational_sign(const Rational& r) {
  if (r < 0) return -1;
  if (r > 0) return 1;
  return 0;
}

Rational dyadic_unit(int k) {
  if (k < 0) throw std::invalid_argument("dyadic_unit: negative exponent");
  BigInt den = boost::multiprecision::pow(BigInt(2), k);
  return Rational(BigInt(1), den);
}

std::vector<double> to_double_vec(const RVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rational& r : v) out.push_back(to_double(r));
  return out;
}

}  // namespace repval
