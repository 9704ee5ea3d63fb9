#pragma once

#include <optional>
#include <string>

#include "sumlogic/rational.hpp"

namespace sumlogic {

// Extended reals: finite rationals plus +inf, -inf and an undefined element.
// Undefined absorbs every operation. The two convention-bearing cases are
// 0 * (+-inf) = 0 and inf + (-inf) = 0; everything else is as usual.
class XReal {
public:
  enum class Kind { Finite, PosInf, NegInf, Undef };

  XReal() : kind_(Kind::Finite) {}
  static XReal finite(Rational r) {
    XReal x;
    x.kind_ = Kind::Finite;
    x.r_ = std::move(r);
    return x;
  }
  static XReal pos_inf() { return tagged(Kind::PosInf); }
  static XReal neg_inf() { return tagged(Kind::NegInf); }
  static XReal undef() { return tagged(Kind::Undef); }

  Kind kind() const { return kind_; }
  bool is_undef() const { return kind_ == Kind::Undef; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& rat() const { return r_; }

  friend XReal operator+(const XReal& a, const XReal& b) {
    if (a.is_undef() || b.is_undef())
      return undef();
    if (a.is_finite() && b.is_finite())
      return finite(a.r_ + b.r_);
    int sa = a.inf_sign(), sb = b.inf_sign();
    if (sa != 0 && sb != 0)
      return sa + sb == 0 ? finite(Rational(0)) : (sa > 0 ? pos_inf() : neg_inf());
    int s = sa != 0 ? sa : sb;
    return s > 0 ? pos_inf() : neg_inf();
  }

  friend XReal operator*(const XReal& a, const XReal& b) {
    if (a.is_undef() || b.is_undef())
      return undef();
    if (a.is_finite() && b.is_finite())
      return finite(a.r_ * b.r_);
    // At least one infinity; a zero factor wins.
    if ((a.is_finite() && a.r_.is_zero()) || (b.is_finite() && b.r_.is_zero()))
      return finite(Rational(0));
    int s = a.sign() * b.sign();
    return s > 0 ? pos_inf() : neg_inf();
  }

  XReal operator-() const {
    switch (kind_) {
      case Kind::Finite: return finite(-r_);
      case Kind::PosInf: return neg_inf();
      case Kind::NegInf: return pos_inf();
      default: return undef();
    }
  }

  // -1/0/1 ordering with -inf below and +inf above all finites; nullopt when
  // either side is undefined (comparisons with undefined never hold).
  static std::optional<int> compare(const XReal& a, const XReal& b) {
    if (a.is_undef() || b.is_undef())
      return std::nullopt;
    int ra = a.rank(), rb = b.rank();
    if (ra != rb)
      return ra < rb ? -1 : 1;
    if (a.is_finite())
      return a.r_ == b.r_ ? 0 : (a.r_ < b.r_ ? -1 : 1);
    return 0;
  }

  bool operator==(const XReal& o) const {
    if (kind_ != o.kind_)
      return false;
    return kind_ != Kind::Finite || r_ == o.r_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Finite: return r_.str();
      case Kind::PosInf: return "inf";
      case Kind::NegInf: return "-inf";
      default: return "undef";
    }
  }

private:
  static XReal tagged(Kind k) {
    XReal x;
    x.kind_ = k;
    return x;
  }
  int inf_sign() const {
    return kind_ == Kind::PosInf ? 1 : kind_ == Kind::NegInf ? -1 : 0;
  }
  int sign() const { return is_finite() ? r_.sign() : inf_sign(); }
  int rank() const {
    return kind_ == Kind::NegInf ? -1 : kind_ == Kind::PosInf ? 1 : 0;
  }

  Kind kind_;
  Rational r_;
};

}  // namespace sumlogic
