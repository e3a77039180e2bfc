#include "cover_games/rational.hpp"

#include <cctype>
#include <limits>

#include "cover_games/errors.hpp"

namespace cover_games {

namespace {

constexpr unsigned long kSqrtBits = 64;

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw InputError("malformed rational '" + std::string(whole) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part == "-" || int_part == "+" || int_part.empty()) int_part = "0";
    if (frac_part.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    Integer whole = parse_integer(int_part, text);
    Integer frac = parse_integer(frac_part, text);
    if (frac < 0) throw InputError("malformed rational '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Integer magnitude = abs(whole) * scale + frac;
    Rational q(negative ? Integer(-magnitude) : magnitude, scale);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational half_power(unsigned long k) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(Integer(1), den);
}

Integer two_pow_two_pow(unsigned n) {
  Integer exponent;
  mpz_ui_pow_ui(exponent.get_mpz_t(), 2, n);
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 2, exponent.get_ui());
  return result;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return false;
  }
  Integer n = sqrt(q.get_num());
  Integer d = sqrt(q.get_den());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Rational sqrt_lower(const Rational& q) {
  if (q <= 0) return Rational(0);
  Rational root;
  if (exact_sqrt(q, root)) return root;
  Integer scaled = q.get_num() * q.get_den();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * kSqrtBits);
  Integer s = sqrt(scaled);
  Integer den = q.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), kSqrtBits);
  Rational r(s, den);
  r.canonicalize();
  return r;
}

Rational sqrt_upper(const Rational& q) {
  if (q <= 0) return Rational(0);
  Rational root;
  if (exact_sqrt(q, root)) return root;
  Integer scaled = q.get_num() * q.get_den();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * kSqrtBits);
  Integer s = sqrt(scaled) + 1;
  Integer den = q.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), kSqrtBits);
  Rational r(s, den);
  r.canonicalize();
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::int64_t saturate_int64(const Integer& value) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (value.fits_slong_p()) return value.get_si();
  return value > 0 ? std::numeric_limits<std::int64_t>::max()
                   : std::numeric_limits<std::int64_t>::min();
}

}  // namespace cover_games
