#include "seqvote/fraction.hpp"

#include <limits>
#include <ostream>

#include "seqvote/error.hpp"

namespace seqvote {

namespace {

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::BadSpec, "integer out of 64-bit range: " + z.get_str());
  return z.get_si();
}

}  // namespace

Fraction::Fraction(long long numerator, long long denominator) {
  if (denominator == 0) throw Error(ErrorCode::BadSpec, "zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
  q_.canonicalize();
}

Fraction Fraction::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty fraction");
  Fraction f;
  const auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw Error(ErrorCode::ParseError, "bad fraction '" + s + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t scale = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") throw Error(ErrorCode::ParseError, "bad fraction '" + s + "'");
      if (digits.front() == '+') digits.erase(0, 1);
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
      f.q_ = mpq_class(num, den);
    } else {
      if (s.front() == '+') s.erase(0, 1);
      f.q_ = mpq_class(s, 10);
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad fraction '" + std::string(text) + "'");
  }
  if (f.q_.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  f.q_.canonicalize();
  return f;
}

long long Fraction::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return to_ll(r);
}

long long Fraction::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return to_ll(r);
}

Fraction& Fraction::operator/=(const Fraction& o) {
  if (o.q_ == 0) throw Error(ErrorCode::BadSpec, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

Fraction harmonic(std::size_t u) {
  Fraction h;
  for (std::size_t t = 1; t <= u; ++t) h += Fraction(1, static_cast<long long>(t));
  return h;
}

}  // namespace seqvote
