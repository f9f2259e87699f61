#include "szegolab/irregularity.hpp"

#include <algorithm>
#include <cmath>

namespace szegolab {

const char* verdict_name(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::UNBOUNDED_TREND: return "UNBOUNDED_TREND";
    case ScanVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
    case ScanVerdict::BOUNDED_PLATEAU: return "BOUNDED_PLATEAU";
  }
  return "UNKNOWN";
}

double laplace_slope(double p) {
  double pc = p / (p - 1.0);
  return 2.0 - std::sqrt(2.0) * (1.0 / std::sqrt(p) + 1.0 / std::sqrt(pc));
}

namespace {

Real memoized_moment(const RadialWeightModel& w, const Real& beta, const PrecCtx& ctx,
                     MomentMemo* memo) {
  if (!memo) return moment(w, beta, ctx);
  std::string key = w.tag() + "@" + beta.str(40, std::ios_base::scientific);
  auto it = memo->find(key);
  if (it != memo->end()) return it->second;
  Real v = moment(w, beta, ctx);
  memo->emplace(std::move(key), v);
  return v;
}

}  // namespace

Real mode_projection_bound(const RadialWeightModel& w, int n, const Real& p,
                           const PrecCtx& ctx, MomentMemo* memo) {
  if (n < 0) fail(errc::config_error, "n must be >= 0");
  if (!(p > 1)) fail(errc::config_error, "mode projection bound requires p > 1");
  PrecisionScope scope(ctx);
  Real pc = p / (p - 1);
  Real log_gp = log(memoized_moment(w, Real(n) * p, ctx, memo));
  Real log_gpc = log(memoized_moment(w, Real(n) * pc, ctx, memo));
  Real log_g2 = log(memoized_moment(w, Real(2 * n), ctx, memo));
  return exp(log_gp / p + log_gpc / pc - log_g2);
}

IrregularityReport irregularity_scan(const RadialWeightModel& w, const Real& p,
                                     const std::vector<int>& n_list, const PrecCtx& ctx,
                                     const ScanOptions& opts) {
  if (n_list.empty()) fail(errc::config_error, "n_list must be nonempty");
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    fail(errc::config_error, "n_list must be ascending");

  IrregularityReport rep;
  rep.p = static_cast<double>(p);
  rep.weight_tag = w.tag();
  rep.n_list = n_list;
  rep.predicted_slope = laplace_slope(rep.p);

  MomentMemo memo;
  rep.r_values.resize(n_list.size());
  for (size_t i = 0; i < n_list.size(); ++i)
    rep.r_values[i] = mode_projection_bound(w, n_list[i], p, ctx, &memo);

  // least squares of log R on sqrt(n)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n_list.size(); ++i) {
    double x = std::sqrt(static_cast<double>(n_list[i]));
    double y = static_cast<double>(log(rep.r_values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n_list.size() * sxx - sx * sx;
  rep.fitted_slope = denom == 0 ? 0 : (n_list.size() * sxy - sx * sy) / denom;

  bool strictly_increasing = true;
  for (size_t i = 1; i < rep.r_values.size(); ++i)
    strictly_increasing = strictly_increasing && rep.r_values[i] > rep.r_values[i - 1];
  bool grew = rep.r_values.back() > Real(opts.growth_threshold);

  bool plateau = false;
  if (rep.r_values.size() >= 3) {
    plateau = true;
    size_t m = rep.r_values.size();
    for (size_t i = m - 3; i + 1 < m; ++i)
      plateau = plateau &&
                rel_diff(rep.r_values[i], rep.r_values[i + 1]) < opts.plateau_rel;
  }

  if (strictly_increasing && grew)
    rep.verdict = ScanVerdict::UNBOUNDED_TREND;
  else if (plateau)
    rep.verdict = ScanVerdict::BOUNDED_PLATEAU;
  else
    rep.verdict = ScanVerdict::INCONCLUSIVE;
  return rep;
}

DualityCheck duality_symmetry_check(const RadialWeightModel& w, int n, const Real& p,
                                    const PrecCtx& ctx, double tolerance) {
  DualityCheck out;
  Real pc = p / (p - 1);
  out.r_p = mode_projection_bound(w, n, p, ctx);
  out.r_p_conjugate = mode_projection_bound(w, n, pc, ctx);
  out.rel_difference = rel_diff(out.r_p, out.r_p_conjugate);
  out.pass = out.rel_difference <= tolerance;
  return out;
}

}  // namespace szegolab
