#include "wsdp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace wsdp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // decimal with optional exponent
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    Integer ex = parse_integer(text.substr(e + 1));
    if (!ex.fits_slong_p()) throw std::invalid_argument("exponent out of range");
    exponent = ex.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot), fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - frac_digits;
  Rational r;
  if (shift >= 0)
    r = Rational(num * pow10(static_cast<unsigned long>(shift)), 1);
  else
    r = Rational(num, pow10(static_cast<unsigned long>(-shift)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

std::optional<std::string> exact_decimal(const Rational& value) {
  Integer den = value.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(5).get_mpz_t());
  if (den != 1) return std::nullopt;
  unsigned long places = std::max(twos, fives);
  Integer scaled = value.get_num() * pow10(places) / value.get_den();
  bool negative = scaled < 0;
  std::string digits = Integer(abs(scaled)).get_str(10);
  if (places == 0) return (negative ? "-" : "") + digits;
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return (negative ? "-" : "") + digits;
}

std::string rounded_decimal(const Rational& value, int digits) {
  if (value == 0) return "0";
  mpf_class f(value, 256);
  mp_exp_t exp10 = 0;
  std::string s = f.get_str(exp10, 10, static_cast<size_t>(digits));
  bool negative = !s.empty() && s.front() == '-';
  if (negative) s.erase(0, 1);
  std::string out = negative ? "-" : "";
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

Integer denominator_lcm(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Integer numerator_gcd(std::span<const Rational> values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  return g;
}

int sign(const Rational& value) { return sgn(value); }

}  // namespace wsdp
