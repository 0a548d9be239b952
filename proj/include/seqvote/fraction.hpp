#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace seqvote {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Fraction {
 public:
  Fraction() = default;
  Fraction(long long value) : q_(static_cast<long>(value)) {}  // NOLINT(implicit)
  Fraction(long long numerator, long long denominator);
  explicit Fraction(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p/q", an integer, or a finite decimal such as "0.25".
  static Fraction parse(std::string_view text);

  std::string str() const { return q_.get_str(); }
  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }

  /// Largest integer not above the value. Throws if it does not fit in 64 bits.
  long long floor() const;
  long long ceil() const;

  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }

  Fraction& operator+=(const Fraction& o) { q_ += o.q_; return *this; }
  Fraction& operator-=(const Fraction& o) { q_ -= o.q_; return *this; }
  Fraction& operator*=(const Fraction& o) { q_ *= o.q_; return *this; }
  Fraction& operator/=(const Fraction& o);

  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
  friend Fraction operator/(Fraction a, const Fraction& b) { return a /= b; }
  friend Fraction operator-(Fraction a) { a.q_ = -a.q_; return a; }

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fraction& f);

 private:
  mpq_class q_{0};
};

inline Fraction min(const Fraction& a, const Fraction& b) { return b < a ? b : a; }
inline Fraction max(const Fraction& a, const Fraction& b) { return a < b ? b : a; }

/// H(u) = 1 + 1/2 + ... + 1/u, with H(0) = 0.
Fraction harmonic(std::size_t u);

}  // namespace seqvote
