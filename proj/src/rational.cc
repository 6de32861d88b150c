#include "hplwo/rational.h"

#include <cctype>
#include <stdexcept>

namespace hplwo {

namespace {

using boost::multiprecision::cpp_int;

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int reads a leading 0 as an octal prefix.
cpp_int Digits(std::string_view digits) {
  size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return cpp_int(std::string(digits.substr(first)));
}

cpp_int Pow10(long exponent) {
  cpp_int out = 1;
  for (long i = 0; i < exponent; ++i) out *= 10;
  return out;
}

Rational ParseDecimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  size_t e = text.find_first_of("eE");
  if (e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    bool negative_exp = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      negative_exp = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!AllDigits(exp_text) || exp_text.size() > 6) {
      throw std::invalid_argument("bad exponent");
    }
    exponent = std::stol(std::string(exp_text));
    if (negative_exp) exponent = -exponent;
  }

  std::string_view int_part = mantissa;
  std::string_view frac_part;
  size_t dot = mantissa.find('.');
  if (dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("empty number");
  }
  if ((!int_part.empty() && !AllDigits(int_part)) ||
      (!frac_part.empty() && !AllDigits(frac_part))) {
    throw std::invalid_argument("not a decimal number");
  }

  std::string digits = std::string(int_part) + std::string(frac_part);
  cpp_int numerator = Digits(digits);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  if (scale >= 0) return Rational(numerator, Pow10(scale));
  return Rational(numerator * Pow10(-scale));
}

}  // namespace

Rational ParseRational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  Rational out;
  size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) {
      throw std::invalid_argument("not a fraction");
    }
    cpp_int d = Digits(den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    out = Rational(Digits(num), d);
  } else {
    out = ParseDecimal(text);
  }
  return negative ? Rational(-out) : out;
}

std::string FormatRational(const Rational& value) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  // Terminating decimals have denominators of the form 2^a 5^b.
  cpp_int rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  int places = std::max(twos, fives);
  cpp_int scaled = num * (Pow10(places) / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, places - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

double ToDouble(const Rational& value) { return value.convert_to<double>(); }

}  // namespace hplwo
