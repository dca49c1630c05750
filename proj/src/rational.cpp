#include "absprob/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace absprob {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  std::string_view s = text;
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
      negative = num[0] == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(mpz_class(std::string(num), 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) {
      exp_negative = exp[0] == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) return fail();
    exponent = std::stol(std::string(exp));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if (!int_part.empty() && !all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  Rational r;
  if (scale >= 0) {
    r = Rational(mantissa, pow10(static_cast<unsigned long>(scale)));
  } else {
    r = Rational(mantissa * pow10(static_cast<unsigned long>(-scale)));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  mpz_class scale = pow10(static_cast<unsigned long>(digits));
  Rational scaled = value * scale;
  // round half away from zero
  mpz_class num = scaled.get_num();
  mpz_class den = scaled.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class q = (2 * num + den) / (2 * den);
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  std::string int_part = s.substr(0, s.size() - static_cast<std::size_t>(digits));
  std::string frac_part = s.substr(s.size() - static_cast<std::size_t>(digits));
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  std::string out = (negative && q != 0 ? "-" : "") + int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace absprob
