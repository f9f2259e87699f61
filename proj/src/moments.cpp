#include "szegolab/moments.hpp"

#include "szegolab/cache.hpp"

#include <algorithm>
#include <cmath>

namespace szegolab {

namespace {

// Laplace peak of r^{beta+1} w(r) in s coordinates: maximize
// (beta/2) log((s-1)/s) + log w(s). Double precision; only a split point.
double find_peak_s(const RadialWeightModel& w, double beta) {
  if (beta <= 0) return 1.0;
  auto h = [&](double s) { return 0.5 * beta * std::log1p(-1.0 / s) + w.log_value_s(s); };
  double lo = 1.0 + 1e-9;
  double best = lo, best_val = h(lo);
  // bracket by doubling
  double prev = best_val;
  double s = 2.0;
  double hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    double v = h(s);
    if (v > best_val) {
      best_val = v;
      best = s;
    }
    hi = s;
    if (v < prev - 2.0 && s > best * 4) break;
    prev = v;
    s *= 1.5;
  }
  // golden-section polish around the best sample
  double a = std::max(lo, best / 2), b = std::min(hi, best * 2 + 4);
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < 80 && (b - a) > 1e-6 * b; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = h(x1);
    }
  }
  return std::max(1.0, 0.5 * (a + b));
}

Real two_pi_sq() {
  Real pi = const_pi();
  return 4 * pi * pi;
}

// integrand of the s-route: (1 - 1/s)^{beta/2} w(s) / (2 s^2), with the
// factor (s-1)/s formed from the exact endpoint distance when available
Real s_integrand(const RadialWeightModel& w, const Real& beta, const Abscissa& p,
                 const Real& lower_endpoint) {
  Real s = p.x;
  Real s_m1 = lower_endpoint == 1 ? p.dist_lo : Real(s - 1);
  if (s_m1 <= 0) return Real(0);
  Real base = s_m1 / s;
  Real power = beta == 0 ? Real(1) : exp(beta / 2 * log(base));
  Real wv = w.value_s(s);
  if (wv == 0) return Real(0);
  return power * wv / (2 * s * s);
}

}  // namespace

Real moment(const RadialWeightModel& w, const Real& beta, const PrecCtx& ctx) {
  ctx.validate();
  if (beta < 0) fail(errc::config_error, "moment requires beta >= 0");

  if (!w.exponentially_flat()) {
    Integrand f = [&](const Abscissa& p) -> Real {
      Real r = p.x;
      Real val = w.value_r_stable(r, p.dist_hi);
      if (val == 0 || r == 0) return Real(0);
      return exp((beta + 1) * log(r)) * val;
    };
    QuadResult q = integrate_finite(f, Real(0), Real(1), ctx);
    return two_pi_sq() * q.value;
  }

  double peak = find_peak_s(w, static_cast<double>(beta));
  Real scale = two_pi_sq();
  if (peak <= 2.0) {
    Integrand f = [&](const Abscissa& p) { return s_integrand(w, beta, p, Real(1)); };
    QuadResult q = integrate_semi_infinite(f, Real(1), ctx);
    return scale * q.value;
  }
  Real split(peak);
  Integrand head = [&](const Abscissa& p) { return s_integrand(w, beta, p, Real(1)); };
  Integrand tail = [&](const Abscissa& p) { return s_integrand(w, beta, p, Real(0)); };
  QuadResult qh = integrate_finite(head, Real(1), split, ctx);
  QuadResult qt = integrate_semi_infinite(tail, split, ctx);
  return scale * (qh.value + qt.value);
}

bool MomentTable::check_log_convexity(double slack) const {
  for (const Real& v : values)
    if (!(v > 0)) return false;
  Real tol(1 + slack);
  for (size_t n = 1; n + 1 < values.size(); ++n) {
    if (values[n] * values[n] > values[n - 1] * values[n + 1] * tol) return false;
  }
  return true;
}

MomentTable moment_table(const WeightParams& params, int j, int n_max,
                         const PrecCtx& ctx) {
  if (n_max < 0) fail(errc::config_error, "n_max must be >= 0");
  if (j < 0) fail(errc::config_error, "j must be >= 0");
  params.validate();

  PrecCtx attempt = ctx;
  for (int escalation = 0;; ++escalation) {
    PrecisionScope scope(attempt);
    RadialWeightProfile w = RadialWeightProfile::inflation(params, j);
    MomentTable t;
    t.params = params;
    t.j = j;
    t.significand_bits = attempt.significand_bits;
    t.rel_tol = attempt.target_rel_err;
    t.values.resize(static_cast<size_t>(n_max) + 1);
    t.err_bounds.resize(static_cast<size_t>(n_max) + 1);
    parallel_for(n_max + 1, [&](int n) {
      Real v = moment(w, Real(2 * n), attempt);
      t.values[static_cast<size_t>(n)] = v;
      t.err_bounds[static_cast<size_t>(n)] = abs(v) * Real(attempt.target_rel_err);
    });
    if (t.check_log_convexity(16 * attempt.target_rel_err + 1e-40)) return t;
    if (escalation >= 2)
      fail(errc::log_convexity_violation,
           "moment table failed log-convexity after precision escalation");
    attempt.significand_bits *= 2;
  }
}

Real boundary_monomial_norm_sq(const WeightParams& params, int n, int j,
                               const PrecCtx& ctx) {
  if (n < 0 || j < 0) fail(errc::config_error, "indices must be >= 0");
  params.validate();
  // both angular integrals are exact 2*pi factors; the radial factor is
  // int_0^1 r^{2n+1} phi^{2j+1} sqrt(1+|grad phi|^2) dr, evaluated in r
  RadialWeightProfile w(params, 2 * j + 1);
  Integrand f = [&](const Abscissa& p) -> Real {
    Real val = w.value_r_stable(p.x, p.dist_hi);
    if (val == 0) return val;
    return pow(p.x, 2 * n + 1) * val;
  };
  QuadResult q = integrate_finite(f, Real(0), Real(1), ctx);
  Real pi = const_pi();
  return 4 * pi * pi * q.value;
}

ConsistencyReport inflation_consistency_check(const WeightParams& params,
                                              const std::vector<std::pair<int, int>>& grid,
                                              const PrecCtx& ctx, double tolerance,
                                              double weight_normalization,
                                              TableStore* store) {
  ConsistencyReport rep;
  rep.tolerance = tolerance;
  PrecisionScope scope(ctx);
  Real two_pi = 2 * const_pi();
  Real c = weight_normalization == 0 ? two_pi : Real(weight_normalization);

  int max_j = -1;
  for (auto [n, j] : grid) max_j = std::max(max_j, j);
  std::vector<MomentTable> tables;
  for (int j = 0; j <= max_j; ++j) {
    int need = 0;
    for (auto [n, jj] : grid)
      if (jj == j) need = std::max(need, n);
    tables.push_back(store && store->enabled() ? store->get_or_compute(params, j, need, ctx)
                                                : moment_table(params, j, need, ctx));
  }

  for (auto [n, j] : grid) {
    ConsistencyEntry e;
    e.n = n;
    e.j = j;
    // table side: c_j * (theta integral) * radial moment = (c_j/2pi) * m_{j,n}
    e.table_value = tables[static_cast<size_t>(j)].at(n) * c / two_pi;
    e.boundary_value = boundary_monomial_norm_sq(params, n, j, ctx);
    e.rel_err = rel_diff(e.table_value, e.boundary_value);
    e.pass = e.rel_err <= tolerance;
    rep.all_pass = rep.all_pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace szegolab
