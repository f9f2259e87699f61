#pragma once

// Weighted Bergman kernels B_j(z,t) = sum_n (z conj(t))^n / m_{j,n} and the
// inflated boundary kernel S[(z1,z2),(t1,t2)] = sum_j z2^j B_j(z1,t1)
// conj(t2)^j, evaluated at interior points with certified truncation bounds.

#include <map>

#include "szegolab/moments.hpp"

namespace szegolab {

class TableStore;

struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i = 0) : re(r), im(i) {}

  Complex conj() const { return {re, Real(-im)}; }
  Real abs_sq() const { return re * re + im * im; }
  Real abs() const { return sqrt(abs_sq()); }

  Complex operator+(const Complex& o) const { return {Real(re + o.re), Real(im + o.im)}; }
  Complex operator-(const Complex& o) const { return {Real(re - o.re), Real(im - o.im)}; }
  Complex operator*(const Complex& o) const {
    return {Real(re * o.re - im * o.im), Real(re * o.im + im * o.re)};
  }
  Complex operator*(const Real& s) const { return {Real(re * s), Real(im * s)}; }
  Complex operator/(const Real& s) const { return {Real(re / s), Real(im / s)}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool is_zero() const { return re == 0 && im == 0; }
};

inline double rel_diff(const Complex& a, const Complex& b) {
  Real scale = (std::max)((a - b).abs(), (std::max)(a.abs(), b.abs()));
  Real num = (a - b).abs();
  Real den = (std::max)(a.abs(), b.abs());
  if (den == 0) return 0.0;
  return static_cast<double>(num / den);
}

// Lazily extends moment tables as kernel truncations demand more entries;
// persists them through store when one is supplied.
class MomentTableProvider {
public:
  MomentTableProvider(WeightParams params, PrecCtx ctx, int initial_n_max = 32,
                      TableStore* store = nullptr)
      : params_(std::move(params)),
        ctx_(std::move(ctx)),
        initial_n_max_(initial_n_max),
        store_(store) {}

  const MomentTable& get(int j, int min_n);
  const WeightParams& params() const { return params_; }
  const PrecCtx& ctx() const { return ctx_; }

private:
  WeightParams params_;
  PrecCtx ctx_;
  int initial_n_max_;
  TableStore* store_ = nullptr;
  std::map<int, MomentTable> tables_;
};

struct KernelEval {
  Complex value;
  Real tail_bound;
  int terms_used = 0;
};

// Series evaluation with the log-convexity tail bound: with rho = |z conj(t)|
// and q = m_{N+2}/m_{N+1}, the tail past N is at most
// rho^{N+1} / (m_{N+1} (1 - rho/q)) once rho < q. tol is relative to the
// absolute-value majorant of the series.
KernelEval bergman_kernel_eval(const MomentTable& table, const Complex& z,
                               const Complex& t, double tol);

struct SzegoEval {
  Complex value;
  Real tail_bound;
  int n_truncation = 0;  // largest Bergman truncation used
  int j_truncation = 0;
};

// Double truncation over j then n; requires both argument pairs interior:
// |z2| < phi(|z1|), |t2| < phi(|t1|).
SzegoEval szego_kernel_eval(const Complex& z1, const Complex& z2, const Complex& t1,
                            const Complex& t2, double tol, MomentTableProvider& tables);

}  // namespace szegolab
