#pragma once

// Exact symbolic differentiation of the boundary weight in s = 1/(1-r^2)
// coordinates, plus the machine-checkable certificate that the weight meets
// the derivative criterion for L^p-irregularity: every derivative decays at
// infinity and (-1)^n d^n/ds^n eventually has constant sign, with an explicit
// rational tail threshold per order.
//
// Supported parameter ring: A a nonnegative integer, alpha a positive
// integer, B rational. There the n-th derivative has the closed shape
//   s^{-A} e^{-B s^alpha} * N_n * R^{1/2-n},
// where R = 1 + e^{-2B s^alpha} L(s) is the radicand and N_n lives in the
// ring of sums e^{-2kB s^alpha} * (Laurent polynomial).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "szegolab/ratpoly.hpp"
#include "szegolab/weight.hpp"

namespace szegolab {

struct RadicalExpr {
  Rational prefactor_rate;   // B in e^{-B s^alpha}
  int prefactor_s_power = 0; // -A in s^{-A}
  int alpha = 1;
  Rational exp_step;         // 2B: slot k of numerator/radicand carries e^{-2kB s^alpha}
  ExpPolyElem numerator;     // N_n
  ExpPolyElem radicand;      // R
  int half_exponent = 0;     // n in R^{1/2-n}

  bool operator==(const RadicalExpr&) const = default;
};

// nu-type expression (n = 0) for the given parameters.
// Throws UnsupportedParams outside the symbolic ring.
RadicalExpr weight_s_expression(const WeightParams& p);

// Exact d/ds; half_exponent increments, radicand unchanged.
RadicalExpr derivative(const RadicalExpr& e);

RadicalExpr nth_derivative(const WeightParams& p, int n);

// Numeric evaluation at s >= 1.
Real radical_eval(const RadicalExpr& e, const Real& s);

struct StructureReport {
  int order = 0;
  bool k0_is_constant = false;
  Rational k0_constant;             // set when constant
  bool lead_sign_ok = false;        // sign of the k=0 leading coefficient is (-1)^n
  std::map<int, RatPoly> p_k;       // exponential slots k >= 1 of N_n
  std::string step_note;            // records the e^{-2kBs^alpha} bookkeeping
};

// Checks the shape of N_n. For (0,1,1) the k=0 slot must be exactly the
// constant (-1)^n; elsewhere in the ring the leading coefficient must carry
// that sign. Throws StructureViolation otherwise.
StructureReport verify_structure(const RadicalExpr& e, int n);

struct ThresholdCert {
  Rational s_n;               // threshold: sign is (-1)^n on (s_n, infinity)
  Rational gamma;             // certified lower bound for (-1)^n * (k=0 part) on [s_n, inf)
  Rational tail_bound;        // certified upper bound for sum_k e^{-2kBs^a}|P_k| on [s_n, inf)
  Rational max_critical_point;  // largest arg-max d/rho among the bounded terms
  std::string gamma_method;   // how gamma was certified
};

// Finds a rational s_n with tail_bound < gamma, all in exact arithmetic:
// each P_k is expanded about s_n, each shifted monomial |c| u^d e^{-rho u}
// is bounded by its supremum |c| (d/rho)^d e^{-d}, exponentials are bounded
// by reciprocal Taylor partial sums, and negative powers by their value at
// s_n. Throws ThresholdNotFound past the search cap.
ThresholdCert tail_sign_threshold(const RadicalExpr& e, int n);

// Structural decay check: the prefactor rate is positive (or the numerator
// itself decays), so d^n/ds^n -> 0 at infinity.
bool limit_check(const RadicalExpr& e);

struct OrderRecord {
  int n = 0;
  StructureReport structure;
  bool structure_ok = false;
  bool limit_zero_ok = false;
  ThresholdCert threshold;
  bool sign_spot_check_ok = false;
  int sign_points_checked = 0;
};

struct DzCertificate {
  WeightParams params;
  int max_order = 0;
  ExpPolyElem radicand;
  bool radicand_ge_one = false;   // R - 1 certified nonnegative on [1, inf)
  std::vector<OrderRecord> orders;
  std::string chain_rule_note;
  bool valid = false;
};

// Runs the full per-order pipeline for n = 0..max_order and corroborates
// each symbolic threshold with sign evaluations at sign_points points of
// (s_n, s_n + 100).
DzCertificate dz_certify(const WeightParams& p, int max_order, int sign_points = 1000);

std::string certificate_to_json(const DzCertificate& cert);

// Rational q with e^{-x} <= q, via a reciprocal Taylor partial sum (valid
// for every truncation order).
Rational upper_bound_exp_neg(const Rational& x);

// Numeric fallback diagnostic for parameters outside the symbolic ring:
// finite-difference sign sampling of (-1)^n d^n/ds^n of the weight.
struct NumericSignSample {
  int order = 0;
  double from_s = 0, to_s = 0;
  int points = 0;
  int violations = 0;
};
std::vector<NumericSignSample> numeric_sign_diagnostic(const WeightParams& p,
                                                       int max_order,
                                                       const PrecCtx& ctx);

}  // namespace szegolab
