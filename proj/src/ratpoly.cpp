#include "szegolab/ratpoly.hpp"

namespace szegolab {

RatPoly RatPoly::operator+(const RatPoly& o) const {
  RatPoly r = *this;
  for (const auto& [d, c] : o.coeffs_) r.add_coeff(d, c);
  return r;
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  RatPoly r = *this;
  for (const auto& [d, c] : o.coeffs_) r.add_coeff(d, -c);
  return r;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  RatPoly r;
  for (const auto& [d1, c1] : coeffs_)
    for (const auto& [d2, c2] : o.coeffs_) r.add_coeff(d1 + d2, c1 * c2);
  return r;
}

RatPoly RatPoly::scaled(const Rational& c) const {
  RatPoly r;
  if (c == 0) return r;
  for (const auto& [d, v] : coeffs_) r.coeffs_[d] = v * c;
  return r;
}

RatPoly RatPoly::derivative() const {
  RatPoly r;
  for (const auto& [d, c] : coeffs_)
    if (d != 0) r.add_coeff(d - 1, c * d);
  return r;
}

RatPoly RatPoly::shifted_by_degree(int shift) const {
  RatPoly r;
  for (const auto& [d, c] : coeffs_) r.coeffs_[d + shift] = c;
  return r;
}

Rational RatPoly::eval(const Rational& s) const {
  Rational acc(0);
  for (const auto& [d, c] : coeffs_) {
    Rational p(1);
    int ad = d < 0 ? -d : d;
    for (int i = 0; i < ad; ++i) p *= s;
    acc += d < 0 ? c / p : c * p;
  }
  return acc;
}

Real RatPoly::eval(const Real& s) const {
  // Horner over the full degree span, then correct by s^{low}
  if (coeffs_.empty()) return Real(0);
  int low = low_degree();
  int high = degree();
  Real acc(0);
  for (int d = high; d >= low; --d) acc = acc * s + Real(coeff(d));
  if (low > 0)
    acc *= pow(s, low);
  else if (low < 0)
    acc /= pow(s, -low);
  return acc;
}

bool RatPoly::all_coeffs_nonnegative() const {
  for (const auto& [d, c] : coeffs_)
    if (c < 0) return false;
  return true;
}

RatPoly RatPoly::abs_coeffs() const {
  RatPoly r;
  for (const auto& [d, c] : coeffs_) r.coeffs_[d] = c < 0 ? -c : c;
  return r;
}

RatPoly RatPoly::poly_part_shifted(const Rational& s0) const {
  RatPoly r;
  for (const auto& [d, c] : coeffs_) {
    if (d < 0) continue;
    // binomial expansion of c*(s0+u)^d
    Rational binom(1);
    Rational s0_pow(1);
    std::vector<Rational> s0_powers(d + 1);
    s0_powers[0] = 1;
    for (int i = 1; i <= d; ++i) s0_powers[i] = s0_powers[i - 1] * s0;
    for (int i = 0; i <= d; ++i) {
      r.add_coeff(i, c * binom * s0_powers[d - i]);
      binom = binom * (d - i) / (i + 1);
    }
  }
  return r;
}

ExpPolyElem ExpPolyElem::from_slot(int k, RatPoly p) {
  ExpPolyElem e;
  e.put(k, std::move(p));
  return e;
}

void ExpPolyElem::put(int k, RatPoly p) {
  if (p.is_zero())
    slots_.erase(k);
  else
    slots_[k] = std::move(p);
}

ExpPolyElem ExpPolyElem::operator+(const ExpPolyElem& o) const {
  ExpPolyElem r = *this;
  for (const auto& [k, p] : o.slots_) r.put(k, r.slot(k) + p);
  return r;
}

ExpPolyElem ExpPolyElem::operator*(const ExpPolyElem& o) const {
  ExpPolyElem r;
  for (const auto& [k1, p1] : slots_)
    for (const auto& [k2, p2] : o.slots_) r.put(k1 + k2, r.slot(k1 + k2) + p1 * p2);
  return r;
}

ExpPolyElem ExpPolyElem::scaled(const Rational& c) const {
  ExpPolyElem r;
  if (c == 0) return r;
  for (const auto& [k, p] : slots_) r.slots_[k] = p.scaled(c);
  return r;
}

ExpPolyElem ExpPolyElem::times_poly(const RatPoly& p) const {
  ExpPolyElem r;
  for (const auto& [k, q] : slots_) r.put(k, q * p);
  return r;
}

ExpPolyElem ExpPolyElem::derivative(const Rational& step, int alpha) const {
  ExpPolyElem r;
  RatPoly rate_poly(Rational(step) * alpha, alpha - 1);
  for (const auto& [k, p] : slots_) {
    RatPoly q = p.derivative() - (p * rate_poly).scaled(Rational(k));
    r.put(k, std::move(q));
  }
  return r;
}

Real ExpPolyElem::eval(const Real& s, const Rational& step, int alpha) const {
  Real acc(0);
  Real s_alpha = alpha == 1 ? s : pow(s, alpha);
  for (const auto& [k, p] : slots_) {
    Real term = p.eval(s);
    if (k != 0) term *= exp(-Real(step) * k * s_alpha);
    acc += term;
  }
  return acc;
}

}  // namespace szegolab
