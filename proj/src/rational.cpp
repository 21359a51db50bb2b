// rational.cpp

#include "sumfree/rational.hpp"

#include <stdexcept>

namespace sumfree {

ExactRational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
}

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor_of(const ExactRational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

ExactRational frac_of(const ExactRational& x) {
  ExactRational r = x - ExactRational(floor_of(x));
  r.canonicalize();
  return r;
}

std::string to_string(const ExactRational& x) { return x.get_str(); }

ExactRational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    ExactRational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    r.canonicalize();
    return r;
  }
  bool negative = s[0] == '-';
  std::string body = (negative || s[0] == '+') ? s.substr(1) : s;
  dot = body.find('.');
  std::string int_part = body.substr(0, dot);
  std::string frac_part = body.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) ||
      int_part.find_first_not_of("0123456789") != std::string::npos ||
      frac_part.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("malformed decimal: " + s);
  }
  BigInt num(int_part.empty() ? "0" : int_part);
  BigInt scale = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    scale *= 10;
  }
  if (negative) num = -num;
  return make_rational(num, scale);
}

double to_double(const ExactRational& x) { return x.get_d(); }

std::int64_t to_int64(const BigInt& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw std::overflow_error("integer exceeds 64 bits");
  return z.get_si();
}

}  // namespace sumfree
