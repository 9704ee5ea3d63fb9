#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace sumlogic {

// Exact rational arithmetic. Thin veneer over GMP so nothing else in the
// library touches gmp types directly. Values are always kept reduced with a
// positive denominator.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q" with arbitrary-precision digits.
  static std::optional<Rational> parse(std::string_view s);

  std::string str() const;

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  // Division requires o != 0.
  Rational operator/(const Rational& o) const { return Rational(mpq_class(v_ / o.v_)); }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  // Denominator as long; 0 if it does not fit.
  long den_long() const {
    return v_.get_den().fits_slong_p() ? v_.get_den().get_si() : 0;
  }
  long num_long() const {
    return v_.get_num().fits_slong_p() ? v_.get_num().get_si() : 0;
  }

  const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;
};

inline std::optional<Rational> Rational::parse(std::string_view s) {
  if (s.empty())
    return std::nullopt;
  std::string t(s);
  // mpq_class accepts "p/q" directly but tolerates some junk; validate first.
  size_t slash = t.find('/');
  auto digits_ok = [](std::string_view d) {
    if (!d.empty() && (d[0] == '-' || d[0] == '+'))
      d.remove_prefix(1);
    if (d.empty())
      return false;
    for (char c : d)
      if (c < '0' || c > '9')
        return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(t))
      return std::nullopt;
  } else {
    if (!digits_ok(std::string_view(t).substr(0, slash)) ||
        !digits_ok(std::string_view(t).substr(slash + 1)))
      return std::nullopt;
  }
  mpq_class v;
  if (v.set_str(t, 10) != 0)
    return std::nullopt;
  if (v.get_den() == 0)
    return std::nullopt;
  v.canonicalize();
  return Rational(v);
}

inline std::string Rational::str() const {
  if (v_.get_den() == 1)
    return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace sumlogic
