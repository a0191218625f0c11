#include "kacmoody/rational.hpp"

#include <cctype>

#include "kacmoody/errors.hpp"

namespace kacmoody {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
  }
  Integer z(std::string(text.substr(pos)), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long reduce_mod(const Rational& q, long p) {
  Integer pz(p);
  Integer den = q.get_den();
  Integer den_mod = den % pz;
  if (den_mod == 0) {
    throw DeniedDenominator("denominator " + den.get_str() +
                            " is divisible by " + std::to_string(p));
  }
  Integer num_mod = q.get_num() % pz;
  if (num_mod < 0) num_mod += pz;
  long n = num_mod.get_si();
  long d = den_mod.get_si();
  if (d < 0) d += p;
  __int128 r = static_cast<__int128>(n) * inverse_mod(d, p) % p;
  return static_cast<long>(r);
}

long inverse_mod(long a, long p) {
  long t = 0, new_t = 1;
  long r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    long quotient = r / new_r;
    long tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) {
    throw DeniedDenominator(std::to_string(a) + " is not invertible mod " +
                            std::to_string(p));
  }
  return t < 0 ? t + p : t;
}

}  // namespace kacmoody
