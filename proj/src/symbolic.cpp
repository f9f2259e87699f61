#include "szegolab/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlohmann/json.hpp"

namespace szegolab {

namespace {

using nlohmann::json;

long to_long(const Rational& q) {
  return static_cast<long>(numerator(q));  // caller guarantees integer, small
}

Rational rational_pow(const Rational& x, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

std::string rational_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

json poly_to_json(const RatPoly& p) {
  json o = json::object();
  for (const auto& [d, c] : p.terms()) o[std::to_string(d)] = rational_string(c);
  return o;
}

// log-derivative of the prefactor s^{-A} e^{-B s^alpha}
RatPoly prefactor_log_derivative(const RadicalExpr& e) {
  RatPoly p;
  p.add_coeff(-1, Rational(e.prefactor_s_power));
  p.add_coeff(e.alpha - 1, -e.prefactor_rate * e.alpha);
  return p;
}

// rational >= sup_{u >= 0} u^d e^{-rho u} = (d/rho)^d e^{-d}
Rational sup_monomial_bound(int d, const Rational& rho, Rational* critical_point) {
  if (critical_point) *critical_point = d == 0 ? Rational(0) : Rational(d) / rho;
  if (d == 0) return Rational(1);
  return rational_pow(Rational(d) / rho, d) * upper_bound_exp_neg(Rational(d));
}

// Certified upper bound for sum_{k>=1} e^{-k*step*s^alpha} |P_k(s)| on
// [s0, inf). Convexity of s^alpha gives e^{-k*step*s^alpha} <=
// e^{-k*step*s0^alpha} e^{-rho_k u} with rho_k = k*step*alpha*s0^{alpha-1},
// u = s - s0; the polynomial is expanded about s0 and each monomial bounded
// by its supremum over u >= 0. Negative powers are bounded by their value
// at s0.
Rational tail_bound_at(const ExpPolyElem& numerator, const Rational& step, int alpha,
                       const Rational& s0, Rational* max_critical) {
  Rational total(0);
  if (max_critical) *max_critical = 0;
  Rational s0_alpha = rational_pow(s0, alpha);
  Rational s0_alpha_m1 = rational_pow(s0, alpha - 1);
  for (const auto& [k, p] : numerator.slots()) {
    if (k == 0) continue;
    Rational group = upper_bound_exp_neg(Rational(k) * step * s0_alpha);
    Rational rho = Rational(k) * step * alpha * s0_alpha_m1;
    Rational bound(0);
    for (const auto& [d, c] : p.terms()) {
      if (d < 0) bound += abs(c) / rational_pow(s0, -d);
    }
    RatPoly shifted = p.poly_part_shifted(s0);
    for (const auto& [d, c] : shifted.terms()) {
      Rational crit;
      bound += abs(c) * sup_monomial_bound(d, rho, &crit);
      if (max_critical && crit > *max_critical) *max_critical = crit;
    }
    total += group * bound;
  }
  return total;
}

// cheap double-precision estimate of the same quantity, used to steer the
// threshold search before exact verification
double tail_bound_estimate(const ExpPolyElem& numerator, const Rational& step, int alpha,
                           double s0) {
  double stepd = static_cast<double>(Real(step));
  double total = 0;
  for (const auto& [k, p] : numerator.slots()) {
    if (k == 0) continue;
    double group = std::exp(-k * stepd * std::pow(s0, alpha));
    if (group == 0) continue;
    double rho = k * stepd * alpha * std::pow(s0, alpha - 1);
    double bound = 0;
    RatPoly shifted = p.poly_part_shifted(Rational(static_cast<long>(s0)));
    for (const auto& [d, c] : p.terms())
      if (d < 0) bound += std::abs(static_cast<double>(Real(c))) * std::pow(s0, d);
    for (const auto& [d, c] : shifted.terms()) {
      double sup = d == 0 ? 1.0 : std::exp(d * (std::log(d / rho) - 1.0));
      bound += std::abs(static_cast<double>(Real(c))) * sup;
    }
    total += group * bound;
  }
  return total;
}

struct GammaCert {
  bool ok = false;
  Rational gamma;
  std::string method;
};

// Certified positive lower bound for (-1)^n * k0(s) on [s0, inf).
GammaCert certify_gamma(const RatPoly& k0, int n, const Rational& s0) {
  GammaCert out;
  if (k0.is_zero()) return out;
  RatPoly q = k0.scaled(n % 2 == 0 ? Rational(1) : Rational(-1));
  if (q.is_constant()) {
    if (q.coeff(0) > 0) {
      out.ok = true;
      out.gamma = q.coeff(0);
      out.method = "constant";
    }
    return out;
  }
  if (q.all_coeffs_nonnegative()) {
    // nonnegative-degree terms are nondecreasing on [s0, inf); negative
    // powers are positive and may be dropped
    Rational g(0);
    for (const auto& [d, c] : q.terms())
      if (d >= 0) g += c * rational_pow(s0, d);
    if (g > 0) {
      out.ok = true;
      out.gamma = g;
      out.method = "nonnegative-coefficients";
    }
    return out;
  }
  // general shape: q(s) - gamma >= 0 on [s0, inf) when, after clearing
  // negative powers, the expansion about s0 has no negative coefficient
  Rational val = q.eval(s0);
  if (!(val > 0)) return out;
  Rational gamma = val / 2;
  RatPoly diff = q;
  diff.add_coeff(0, -gamma);
  int clear = diff.low_degree() < 0 ? -diff.low_degree() : 0;
  RatPoly cleared = diff.shifted_by_degree(clear);
  if (cleared.poly_part_shifted(s0).all_coeffs_nonnegative()) {
    out.ok = true;
    out.gamma = gamma;
    out.method = "shift-nonnegative";
  }
  return out;
}

std::vector<Real> fornberg_weights(const std::vector<Real>& x, int order);

}  // namespace

Rational upper_bound_exp_neg(const Rational& x) {
  if (x < 0) fail(errc::config_error, "upper_bound_exp_neg requires x >= 0");
  if (x == 0) return Rational(1);
  double xd = static_cast<double>(Real(x));
  int terms = std::min(400, static_cast<int>(2 * xd) + 24);
  Rational sum(0), term(1);
  for (int i = 0; i <= terms; ++i) {
    sum += term;
    term = term * x / (i + 1);
  }
  return Rational(1) / sum;
}

RadicalExpr weight_s_expression(const WeightParams& p) {
  p.validate();
  if (!p.symbolic_supported())
    fail(errc::unsupported_params,
         "symbolic ring requires integer A >= 0 and integer alpha >= 1 "
         "(rational B); got A=" + rational_string(p.A) +
             ", alpha=" + rational_string(p.alpha));
  int A = static_cast<int>(to_long(p.A));
  int alpha = static_cast<int>(to_long(p.alpha));

  RadicalExpr e;
  e.prefactor_rate = p.B;
  e.prefactor_s_power = -A;
  e.alpha = alpha;
  e.exp_step = 2 * p.B;
  e.half_exponent = 0;
  e.numerator = ExpPolyElem::constant(Rational(1));

  // R = 1 + e^{-2B s^alpha} * 2 (s-1) s^{-2A-1} (A s + alpha B s^{alpha+1})^2
  RatPoly core;
  core.add_coeff(1, Rational(A));
  core.add_coeff(alpha + 1, Rational(alpha) * p.B);
  RatPoly lin;
  lin.add_coeff(1, Rational(2));
  lin.add_coeff(0, Rational(-2));
  RatPoly L = (lin * core * core).shifted_by_degree(-2 * A - 1);
  e.radicand = ExpPolyElem::constant(Rational(1)) + ExpPolyElem::from_slot(1, L);
  return e;
}

RadicalExpr derivative(const RadicalExpr& e) {
  RadicalExpr out = e;
  RatPoly pref = prefactor_log_derivative(e);
  ExpPolyElem n_prime = e.numerator.derivative(e.exp_step, e.alpha);
  ExpPolyElem r_prime = e.radicand.derivative(e.exp_step, e.alpha);
  ExpPolyElem lead = (n_prime + e.numerator.times_poly(pref)) * e.radicand;
  ExpPolyElem corr =
      (e.numerator * r_prime).scaled(Rational(1, 2) - e.half_exponent);
  out.numerator = lead + corr;
  out.half_exponent = e.half_exponent + 1;
  return out;
}

RadicalExpr nth_derivative(const WeightParams& p, int n) {
  if (n < 0) fail(errc::config_error, "derivative order must be >= 0");
  RadicalExpr e = weight_s_expression(p);
  for (int i = 0; i < n; ++i) e = derivative(e);
  return e;
}

Real radical_eval(const RadicalExpr& e, const Real& s) {
  Real s_alpha = e.alpha == 1 ? s : pow(s, e.alpha);
  Real num = e.numerator.eval(s, e.exp_step, e.alpha);
  Real rad = e.radicand.eval(s, e.exp_step, e.alpha);
  Real val = exp(-Real(e.prefactor_rate) * s_alpha) * num;
  Real expo = (Real(1) - 2 * e.half_exponent) / 2;
  val *= pow(rad, expo);
  if (e.prefactor_s_power != 0) val *= pow(s, e.prefactor_s_power);
  return val;
}

StructureReport verify_structure(const RadicalExpr& e, int n) {
  StructureReport rep;
  rep.order = n;
  RatPoly k0 = e.numerator.slot(0);
  if (k0.is_zero())
    fail(errc::structure_violation, "k=0 slot of the numerator vanished");

  Rational expect_sign(n % 2 == 0 ? 1 : -1);
  bool strict_case = e.prefactor_s_power == 0 && e.alpha == 1;
  if (strict_case) {
    // the k=0 slot must be exactly (-B)^n
    Rational expected = rational_pow(-e.prefactor_rate, n);
    if (!k0.is_constant() || k0.coeff(0) != expected)
      fail(errc::structure_violation,
           "k=0 slot is not the constant (-B)^n at order " + std::to_string(n));
  }
  rep.k0_is_constant = k0.is_constant();
  if (rep.k0_is_constant) rep.k0_constant = k0.coeff(0);
  Rational lead = k0.coeff(k0.degree());
  rep.lead_sign_ok = (lead > 0) == (expect_sign > 0);
  if (!rep.lead_sign_ok)
    fail(errc::structure_violation,
         "leading coefficient of the k=0 slot has the wrong sign at order " +
             std::to_string(n));
  for (const auto& [k, poly] : e.numerator.slots())
    if (k >= 1) rep.p_k[k] = poly;
  rep.step_note =
      "exponential slots advance in steps of exp(-2B s^alpha); slot k holds P_k";
  return rep;
}

ThresholdCert tail_sign_threshold(const RadicalExpr& e, int n) {
  RatPoly k0 = e.numerator.slot(0);
  if (k0.is_zero())
    fail(errc::structure_violation, "threshold search requires a k=0 slot");

  bool pure = true;
  for (const auto& [k, poly] : e.numerator.slots())
    if (k >= 1 && !poly.is_zero()) pure = false;

  const long cap = 256;
  for (long c = 1; c <= cap; c += (c < 64 ? 1 : 8)) {
    Rational s0(c);
    GammaCert g = certify_gamma(k0, n, s0);
    if (!g.ok) continue;
    if (pure) {
      ThresholdCert cert;
      cert.s_n = s0;
      cert.gamma = g.gamma;
      cert.tail_bound = 0;
      cert.max_critical_point = 0;
      cert.gamma_method = g.method;
      return cert;
    }
    double est = tail_bound_estimate(e.numerator, e.exp_step, e.alpha,
                                     static_cast<double>(c));
    if (!(est < 0.9 * static_cast<double>(Real(g.gamma)))) continue;
    Rational max_crit;
    Rational bound = tail_bound_at(e.numerator, e.exp_step, e.alpha, s0, &max_crit);
    if (bound < g.gamma) {
      ThresholdCert cert;
      cert.s_n = s0;
      cert.gamma = g.gamma;
      cert.tail_bound = bound;
      cert.max_critical_point = max_crit;
      cert.gamma_method = g.method;
      return cert;
    }
  }
  fail(errc::threshold_not_found,
       "no certified tail threshold below " + std::to_string(cap) +
           " at order " + std::to_string(n));
}

bool limit_check(const RadicalExpr& e) {
  if (e.prefactor_rate > 0) return true;
  // without exponential decay in the prefactor the k=0 slot must vanish
  // at infinity on its own
  RatPoly k0 = e.numerator.slot(0);
  if (k0.is_zero()) return true;
  return k0.degree() + e.prefactor_s_power < 0;
}

DzCertificate dz_certify(const WeightParams& p, int max_order, int sign_points) {
  if (max_order < 0) fail(errc::config_error, "max_order must be >= 0");
  DzCertificate cert;
  cert.params = p;
  cert.max_order = max_order;

  RadicalExpr expr = weight_s_expression(p);
  cert.radicand = expr.radicand;

  // R - 1 = e^{-2B s^alpha} L with L nonnegative on [1, inf): certified by
  // expanding the cleared polynomial about 1 and inspecting coefficients
  RatPoly L = expr.radicand.slot(1);
  int clear = !L.is_zero() && L.low_degree() < 0 ? -L.low_degree() : 0;
  cert.radicand_ge_one = expr.radicand.slot(0) == RatPoly(Rational(1)) &&
                         expr.radicand.max_k() <= 1 &&
                         L.shifted_by_degree(clear)
                             .poly_part_shifted(Rational(1))
                             .all_coeffs_nonnegative();

  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) expr = derivative(expr);
    OrderRecord rec;
    rec.n = n;
    rec.structure = verify_structure(expr, n);
    rec.structure_ok = true;
    rec.limit_zero_ok = limit_check(expr);
    rec.threshold = tail_sign_threshold(expr, n);

    Real s_n(rec.threshold.s_n);
    int ok = 0;
    for (int i = 1; i <= sign_points; ++i) {
      Real s = s_n + Real(100) * i / sign_points;
      Real val = radical_eval(expr, s);
      if (n % 2 == 1) val = -val;
      if (val >= 0) ++ok;
    }
    rec.sign_points_checked = sign_points;
    rec.sign_spot_check_ok = ok == sign_points;
    cert.orders.push_back(std::move(rec));
  }

  cert.chain_rule_note =
      "s = 1/(1-r^2) maps [0,1) increasingly onto [1,inf); decay and eventual "
      "sign of the s-derivatives transfer to the r-coordinate hypotheses, so "
      "thresholds are stored in s.";
  cert.valid = cert.radicand_ge_one;
  for (const auto& rec : cert.orders)
    cert.valid = cert.valid && rec.structure_ok && rec.limit_zero_ok &&
                 rec.sign_spot_check_ok;
  return cert;
}

std::string certificate_to_json(const DzCertificate& cert) {
  json o;
  o["schema"] = "szegolab-dz-certificate-v1";
  o["params"] = {{"A", rational_string(cert.params.A)},
                 {"B", rational_string(cert.params.B)},
                 {"alpha", rational_string(cert.params.alpha)}};
  o["max_order"] = cert.max_order;
  json rad = json::object();
  for (const auto& [k, poly] : cert.radicand.slots())
    rad[std::to_string(k)] = poly_to_json(poly);
  o["radicand"] = rad;
  o["radicand_ge_one"] = cert.radicand_ge_one;
  o["chain_rule_note"] = cert.chain_rule_note;
  o["valid"] = cert.valid;
  o["orders"] = json::array();
  for (const auto& rec : cert.orders) {
    json r;
    r["n"] = rec.n;
    r["structure_ok"] = rec.structure_ok;
    r["k0_is_constant"] = rec.structure.k0_is_constant;
    if (rec.structure.k0_is_constant)
      r["k0_constant"] = rational_string(rec.structure.k0_constant);
    json pk = json::object();
    for (const auto& [k, poly] : rec.structure.p_k)
      pk[std::to_string(k)] = poly_to_json(poly);
    r["p_k"] = pk;
    r["step_note"] = rec.structure.step_note;
    r["limit_zero_ok"] = rec.limit_zero_ok;
    r["tail_threshold"] = rational_string(rec.threshold.s_n);
    r["tail_gamma"] = rational_string(rec.threshold.gamma);
    r["tail_bound"] = rational_string(rec.threshold.tail_bound);
    r["max_critical_point"] = rational_string(rec.threshold.max_critical_point);
    r["gamma_method"] = rec.threshold.gamma_method;
    r["sign_spot_check_ok"] = rec.sign_spot_check_ok;
    r["sign_points_checked"] = rec.sign_points_checked;
    o["orders"].push_back(r);
  }
  return o.dump(2);
}

std::vector<NumericSignSample> numeric_sign_diagnostic(const WeightParams& p,
                                                       int max_order,
                                                       const PrecCtx& ctx) {
  p.validate();
  PrecisionScope scope(ctx.significand_bits * 2);
  RadialWeightProfile w = RadialWeightProfile::inflation(p, 0);
  std::vector<NumericSignSample> out;
  Real h = ldexp(Real(1), -static_cast<long>(ctx.significand_bits) / 8);
  for (int n = 0; n <= max_order; ++n) {
    NumericSignSample s;
    s.order = n;
    s.from_s = 10.0;
    s.to_s = 60.0;
    s.points = 100;
    for (int i = 0; i < s.points; ++i) {
      Real at = Real(s.from_s) + Real(s.to_s - s.from_s) * i / (s.points - 1);
      // iterated central first differences; crude but adequate for a sign
      // diagnostic at this precision
      std::vector<Real> vals;
      for (int jj = -n; jj <= n; ++jj) vals.push_back(w.value_s(at + h * jj));
      for (int d = 0; d < n; ++d) {
        std::vector<Real> nxt;
        for (size_t q = 0; q + 2 <= vals.size(); ++q)
          nxt.push_back((vals[q + 2] - vals[q]) / (2 * h));
        vals = std::move(nxt);
      }
      Real est = vals[vals.size() / 2];
      if (n % 2 == 1) est = -est;
      if (est < 0) ++s.violations;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace szegolab
