#include "sumlogic/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace sumlogic {

namespace {

// Interval arithmetic helpers. All intervals are closed; the enclosures only
// need to be conservative, never tight.

Interval iv_add(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

Interval iv_mul(const Interval& a, const Interval& b) {
  Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  Rational lo = std::min(std::min(c1, c2), std::min(c3, c4));
  Rational hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return {lo, hi};
}

Interval iv_scale(const Interval& a, const Rational& c) {
  if (c.sign() >= 0)
    return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

// x^e over an interval. Even exponents are bounded below by zero (or by the
// interval's own distance from zero when it does not straddle it), which is
// what lets x*x + 1 = 0 be refuted by range analysis alone.
Interval iv_pow(const Interval& a, int e) {
  if (e == 0)
    return {Rational(1), Rational(1)};
  if (e == 1)
    return a;
  Interval r = a;
  if (e % 2 == 0) {
    Rational alo = a.lo.sign() < 0 ? -a.lo : a.lo;
    Rational ahi = a.hi.sign() < 0 ? -a.hi : a.hi;
    Rational big = std::max(alo, ahi);
    Rational small = std::min(alo, ahi);
    bool straddles = a.lo.sign() <= 0 && a.hi.sign() >= 0;
    Interval base = {straddles ? Rational(0) : small, big};
    // base holds |x|; |x|^e computed by repeated multiplication.
    r = base;
    for (int k = 1; k < e; ++k)
      r = iv_mul(r, base);
    return r;
  }
  for (int k = 1; k < e; ++k)
    r = iv_mul(r, a);
  return r;
}

Rational rq_pow(const Rational& x, int e) {
  Rational r(1);
  for (int k = 0; k < e; ++k)
    r *= x;
  return r;
}

}  // namespace

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (!c.is_zero())
    p.terms_[{}] = c;
  return p;
}

Poly Poly::var(int i) {
  Poly p;
  p.terms_[{{i, 1}}] = Rational(1);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rational& c) {
  if (c.is_zero())
    return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero())
    terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_)
    r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_)
    r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_)
    r.terms_[m] = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      // Merge the two sorted exponent lists.
      Mono m;
      size_t i = 0, j = 0;
      while (i < ma.size() || j < mb.size()) {
        if (j == mb.size() || (i < ma.size() && ma[i].first < mb[j].first)) {
          m.push_back(ma[i++]);
        } else if (i == ma.size() || mb[j].first < ma[i].first) {
          m.push_back(mb[j++]);
        } else {
          m.push_back({ma[i].first, ma[i].second + mb[j].second});
          ++i, ++j;
        }
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m)
      t *= rq_pow(x[static_cast<size_t>(v)], e);
    sum += t;
  }
  return sum;
}

int Poly::max_var() const {
  int mx = -1;
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (!m.empty())
      mx = std::max(mx, m.back().first);
  }
  return mx;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    int t = 0;
    for (const auto& [v, e] : m) {
      (void)v;
      t += e;
    }
    d = std::max(d, t);
  }
  return d;
}

Rational Poly::coef_of(int i) const {
  auto it = terms_.find(Mono{{i, 1}});
  return it == terms_.end() ? Rational(0) : it->second;
}

Interval Poly::bound_box(const std::vector<Interval>& box) const {
  Interval sum = {Rational(0), Rational(0)};
  for (const auto& [m, c] : terms_) {
    Interval t = {Rational(1), Rational(1)};
    for (const auto& [v, e] : m)
      t = iv_mul(t, iv_pow(box[static_cast<size_t>(v)], e));
    sum = iv_add(sum, iv_scale(t, c));
  }
  return sum;
}

Interval Poly::bound_simplex(int n) const {
  if (is_linear()) {
    // c0 + sum ci xi over the simplex attains its extrema at vertices:
    // the range is c0 + [min ci, max ci] over all n coordinates.
    Rational c0 = constant_term();
    Rational mn, mx;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      Rational ci = coef_of(i);
      if (first) {
        mn = mx = ci;
        first = false;
      } else {
        mn = std::min(mn, ci);
        mx = std::max(mx, ci);
      }
    }
    if (first)
      return {c0, c0};  // constant polynomial (or n == 0)
    return {c0 + mn, c0 + mx};
  }
  std::vector<Interval> box(static_cast<size_t>(std::max(n, max_var() + 1)),
                            Interval{Rational(0), Rational(1)});
  return bound_box(box);
}

std::string Poly::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first)
      os << " + ";
    first = false;
    os << c.str();
    for (const auto& [v, e] : m) {
      os << "*p" << v + 1;
      if (e > 1)
        os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace sumlogic
