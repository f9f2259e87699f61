#include "szegolab/weight.hpp"

#include <sstream>

namespace szegolab {

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "over" << denominator(q);
  return os.str();
}

bool is_small_int(const Rational& q, long& out) {
  if (denominator(q) != 1) return false;
  BigInt n = numerator(q);
  if (n < -1000000 || n > 1000000) return false;
  out = static_cast<long>(n);
  return true;
}

// x^q with integer fast path
Real pow_rational(const Real& x, const Rational& q) {
  long iq;
  if (is_small_int(q, iq)) {
    if (iq == 0) return Real(1);
    return pow(x, iq);
  }
  return pow(x, Real(q));
}

}  // namespace

std::string WeightParams::tag() const {
  return "A" + rational_str(A) + "_B" + rational_str(B) + "_al" + rational_str(alpha);
}

RadialWeightProfile::RadialWeightProfile(WeightParams params, int phi_power)
    : params_(std::move(params)), phi_power_(phi_power) {
  params_.validate();
  if (phi_power_ < 1) fail(errc::config_error, "phi_power must be >= 1");
}

std::string RadialWeightProfile::tag() const {
  return params_.tag() + "_pw" + std::to_string(phi_power_);
}

// Shared core given u = 1-r^2 and r^2, both already formed stably.
// phi = u^A exp(-B/u^alpha); |grad phi|^2 = 2 r^2 phi^2 (A/u + alpha B/u^{alpha+1})^2.
Real RadialWeightProfile::value_core(const Real& u, const Real& r_sq) const {
  if (u == 0) return Real(0);
  Real A(params_.A), B(params_.B), al(params_.alpha);
  Real u_pow_alpha = pow_rational(u, params_.alpha);
  Real phi1 = exp(-B / u_pow_alpha);
  if (params_.A != 0) phi1 *= pow_rational(u, params_.A);
  Real dlog = al * B / (u_pow_alpha * u);  // alpha B / u^{alpha+1}
  if (params_.A != 0) dlog += A / u;
  Real grad_sq = 2 * r_sq * phi1 * phi1 * dlog * dlog;
  return pow(phi1, phi_power_) * sqrt(1 + grad_sq);
}

Real RadialWeightProfile::value_r(const Real& r) const {
  if (r == 1) return Real(0);
  return value_core(1 - r * r, r * r);
}

Real RadialWeightProfile::value_r_stable(const Real& r, const Real& one_minus_r) const {
  if (one_minus_r == 0) return Real(0);
  return value_core(one_minus_r * (1 + r), r * r);
}

Real RadialWeightProfile::value_s(const Real& s) const {
  return value_core(1 / s, (s - 1) / s);
}

double RadialWeightProfile::log_value_s(double s) const {
  double A = static_cast<double>(Real(params_.A));
  double B = static_cast<double>(Real(params_.B));
  double al = static_cast<double>(Real(params_.alpha));
  return -phi_power_ * (A * std::log(s) + B * std::pow(s, al));
}

Real phi(const WeightParams& p, const Real& r) {
  p.validate();
  if (r == 1) return Real(0);
  Real u = 1 - r * r;
  Real val = exp(-Real(p.B) / pow_rational(u, p.alpha));
  if (p.A != 0) val *= pow_rational(u, p.A);
  return val;
}

Real grad_norm_sq(const WeightParams& p, const Real& r) {
  p.validate();
  Real u = 1 - r * r;
  Real ph = phi(p, r);
  Real dlog = Real(p.alpha) * Real(p.B) / (pow_rational(u, p.alpha) * u);
  if (p.A != 0) dlog += Real(p.A) / u;
  return 2 * r * r * ph * ph * dlog * dlog;
}

// Delta(-log phi) = 4A/u^2 + 4 alpha B (1 + alpha r^2) / u^{alpha+2}, u = 1-r^2.
// Closed-form differentiation of -A log u + B u^{-alpha}; nonnegative on the
// whole admissible range, which is what the scan certifies numerically.
Real laplacian_neg_log_phi(const WeightParams& p, const Real& r) {
  p.validate();
  Real u = 1 - r * r;
  Real al(p.alpha), B(p.B);
  Real val = 4 * al * B * (1 + al * r * r) / (pow_rational(u, p.alpha) * u * u);
  if (p.A != 0) val += 4 * Real(p.A) / (u * u);
  return val;
}

PseudoconvexityResult pseudoconvexity_scan(const WeightParams& p, unsigned grid_size,
                                           double tolerance, double s_cap) {
  p.validate();
  if (grid_size < 2) fail(errc::config_error, "grid_size must be >= 2");
  PseudoconvexityResult res;
  res.grid_size = grid_size;
  res.tolerance = tolerance;
  Real al(p.alpha), B(p.B), A(p.A);
  bool first = true;
  for (unsigned i = 0; i < grid_size; ++i) {
    Real s = 1 + (Real(s_cap) - 1) * i / (grid_size - 1);
    Real r_sq = (s - 1) / s;
    // same closed form in s-coordinates: 4A s^2 + 4 alpha B (1+alpha r^2) s^{alpha+2}
    Real val = 4 * al * B * (1 + al * r_sq) * pow_rational(s, p.alpha) * s * s;
    if (p.A != 0) val += 4 * A * s * s;
    if (first || val < res.min_value) {
      res.min_value = val;
      res.argmin_s = s;
      first = false;
    }
  }
  res.pass = res.min_value >= -Real(tolerance);
  return res;
}

}  // namespace szegolab
