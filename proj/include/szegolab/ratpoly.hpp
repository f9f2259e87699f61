#pragma once

// Exact-rational Laurent polynomials and the exponential-polynomial ring
//   sum_k e^{-k*step*s^alpha} * P_k(s)
// that the derivatives of the flat weights live in. Everything here is exact
// GMP arithmetic; no floating point.

#include <map>
#include <vector>

#include "szegolab/real.hpp"

namespace szegolab {

class RatPoly {
public:
  RatPoly() = default;
  RatPoly(const Rational& c, int degree = 0) {
    if (c != 0) coeffs_[degree] = c;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int low_degree() const { return coeffs_.begin()->first; }   // require !is_zero
  int degree() const { return coeffs_.rbegin()->first; }      // require !is_zero
  bool is_constant() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
  }

  Rational coeff(int d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }
  void add_coeff(int d, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = coeffs_.emplace(d, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  const std::map<int, Rational>& terms() const { return coeffs_; }

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly scaled(const Rational& c) const;
  RatPoly derivative() const;
  RatPoly shifted_by_degree(int shift) const;   // multiply by s^shift

  Rational eval(const Rational& s) const;       // s != 0 when negative degrees present
  Real eval(const Real& s) const;

  bool all_coeffs_nonnegative() const;
  RatPoly abs_coeffs() const;

  // nonnegative-degree part expanded around s0: returns q with
  // q(u) = sum_{d>=0} coeff(d) * (s0+u)^d
  RatPoly poly_part_shifted(const Rational& s0) const;

  bool operator==(const RatPoly&) const = default;

private:
  std::map<int, Rational> coeffs_;
};

class ExpPolyElem {
public:
  ExpPolyElem() = default;
  static ExpPolyElem constant(const Rational& c) { return from_slot(0, RatPoly(c)); }
  static ExpPolyElem from_slot(int k, RatPoly p);

  bool is_zero() const { return slots_.empty(); }
  RatPoly slot(int k) const {
    auto it = slots_.find(k);
    return it == slots_.end() ? RatPoly() : it->second;
  }
  const std::map<int, RatPoly>& slots() const { return slots_; }
  int max_k() const { return slots_.empty() ? 0 : slots_.rbegin()->first; }

  ExpPolyElem operator+(const ExpPolyElem& o) const;
  ExpPolyElem operator*(const ExpPolyElem& o) const;
  ExpPolyElem scaled(const Rational& c) const;
  ExpPolyElem times_poly(const RatPoly& p) const;

  // d/ds with slot k carrying e^{-k*step*s^alpha}:
  //   e^{-k*step*s^alpha} P  ->  e^{-k*step*s^alpha} (P' - k*step*alpha*s^{alpha-1} P)
  ExpPolyElem derivative(const Rational& step, int alpha) const;

  // numeric value at s, given the slot decay and power
  Real eval(const Real& s, const Rational& step, int alpha) const;

  bool operator==(const ExpPolyElem&) const = default;

private:
  void put(int k, RatPoly p);
  std::map<int, RatPoly> slots_;
};

}  // namespace szegolab
