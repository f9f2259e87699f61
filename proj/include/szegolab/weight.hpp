#pragma once

// The exponentially flat radial weight family
//   phi(r) = (1-r^2)^A exp(-B/(1-r^2)^alpha),  A >= 0, B > 0, alpha > 0,
// its gradient, the derived radial weights phi^P sqrt(1+|grad phi|^2), and
// the subharmonicity certificate for -log phi. Weights carry evaluators in
// both the r coordinate and s = 1/(1-r^2); everything near r = 1 is computed
// from 1-r^2 directly so the flat endpoint never loses precision.

#include <memory>
#include <string>

#include "szegolab/quadrature.hpp"
#include "szegolab/real.hpp"

namespace szegolab {

struct WeightParams {
  Rational A{0};
  Rational B{1};
  Rational alpha{1};

  void validate() const {
    if (A < 0) fail(errc::config_error, "A must be nonnegative");
    if (!(B > 0)) fail(errc::config_error, "B must be positive");
    if (!(alpha > 0)) fail(errc::config_error, "alpha must be positive");
  }

  // the ring in which exact symbolic differentiation is implemented
  bool symbolic_supported() const {
    return denominator(A) == 1 && denominator(alpha) == 1 && alpha >= 1;
  }

  std::string tag() const;
  bool operator==(const WeightParams&) const = default;
};

// A radial weight on [0,1) exposed through both coordinates. moment() and
// the norm machinery are written against this interface so that the unit
// and polynomial contrast weights ride the same pipeline.
class RadialWeightModel {
public:
  virtual ~RadialWeightModel() = default;

  virtual Real value_r(const Real& r) const = 0;
  // stable variant: 1-r supplied exactly (quadrature endpoint complement)
  virtual Real value_r_stable(const Real& r, const Real& one_minus_r) const {
    (void)one_minus_r;
    return value_r(r);
  }
  virtual Real value_s(const Real& s) const = 0;

  // coarse log-magnitude of the s-form, used only to locate Laplace peaks
  virtual double log_value_s(double s) const = 0;
  virtual bool exponentially_flat() const = 0;
  virtual std::string tag() const = 0;
};

// w(r) = phi(r)^phi_power * sqrt(1 + |grad phi|^2(r)).
// phi_power = 2j+1 gives the inflation weight of index j; phi_power = k+1
// gives the boundary-slice weight that feeds frequency k of the projection.
class RadialWeightProfile final : public RadialWeightModel {
public:
  RadialWeightProfile(WeightParams params, int phi_power);

  static RadialWeightProfile inflation(const WeightParams& p, int j) {
    return RadialWeightProfile(p, 2 * j + 1);
  }
  static RadialWeightProfile surface_slice(const WeightParams& p, int k) {
    return RadialWeightProfile(p, k + 1);
  }

  Real value_r(const Real& r) const override;
  Real value_r_stable(const Real& r, const Real& one_minus_r) const override;
  Real value_s(const Real& s) const override;
  double log_value_s(double s) const override;
  bool exponentially_flat() const override { return true; }
  std::string tag() const override;

  const WeightParams& params() const { return params_; }
  int phi_power() const { return phi_power_; }

private:
  Real value_core(const Real& u, const Real& r_sq) const;

  WeightParams params_;
  int phi_power_;
};

class UnitWeight final : public RadialWeightModel {
public:
  Real value_r(const Real&) const override { return Real(1); }
  Real value_s(const Real&) const override { return Real(1); }
  double log_value_s(double) const override { return 0.0; }
  bool exponentially_flat() const override { return false; }
  std::string tag() const override { return "unit"; }
};

// (1-r^2)^power: Bekolle-Bonami-regular contrast weight
class PolyWeight final : public RadialWeightModel {
public:
  explicit PolyWeight(int power) : power_(power) {}
  Real value_r(const Real& r) const override { return pow(1 - r * r, power_); }
  Real value_r_stable(const Real& r, const Real& omr) const override {
    return pow(omr * (1 + r), power_);
  }
  Real value_s(const Real& s) const override { return pow(s, -power_); }
  double log_value_s(double s) const override { return -power_ * std::log(s); }
  bool exponentially_flat() const override { return false; }
  std::string tag() const override { return "poly" + std::to_string(power_); }
  int power() const { return power_; }

private:
  int power_;
};

Real phi(const WeightParams& p, const Real& r);

// |grad phi|^2(r) = phi'(r)^2 / 2; the complex-gradient normalization that
// reproduces the explicit weight in s-coordinates.
Real grad_norm_sq(const WeightParams& p, const Real& r);

// Laplacian of -log phi at radius r (radial form u'' + u'/r, continuous at 0).
Real laplacian_neg_log_phi(const WeightParams& p, const Real& r);

struct PseudoconvexityResult {
  Real min_value;
  Real argmin_s;
  unsigned grid_size = 0;
  double tolerance = 0;
  bool pass = false;
};

// Scans Delta(-log phi) on a grid uniform in s up to s_cap and reports the
// minimum; pass iff min >= -tolerance.
PseudoconvexityResult pseudoconvexity_scan(const WeightParams& p, unsigned grid_size,
                                           double tolerance = 1e-25,
                                           double s_cap = 1e6);

}  // namespace szegolab
