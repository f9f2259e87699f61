#pragma once

// Operator-norm lower bounds for the weighted projection: projecting onto
// the n-th rotation mode is an L^p contraction for radial weights, so
//   R_n(p) = ||z^n||_p ||z^n||_p' / ||z^n||_2^2
// bounds the projection norm from below. Unbounded growth of R_n certifies
// L^p-unboundedness; the growth rate follows the Laplace asymptotics of the
// moments.

#include <map>
#include <string>
#include <vector>

#include "szegolab/moments.hpp"

namespace szegolab {

enum class ScanVerdict { UNBOUNDED_TREND, INCONCLUSIVE, BOUNDED_PLATEAU };

const char* verdict_name(ScanVerdict v);

struct ScanOptions {
  double growth_threshold = 5.0;  // final R_n above this counts as unbounded growth
  double plateau_rel = 0.01;      // last three within this fraction counts as plateau
};

struct IrregularityReport {
  double p = 0;
  std::string weight_tag;
  std::vector<int> n_list;
  std::vector<Real> r_values;
  double fitted_slope = 0;     // least squares of log R_n against sqrt(n)
  double predicted_slope = 0;  // Laplace-method rate for the flat family
  ScanVerdict verdict = ScanVerdict::INCONCLUSIVE;
};

// Laplace growth rate of log R_n / sqrt(n) for the exponentially flat
// weights with B = alpha = 1: the moment integral localizes at s ~
// sqrt(beta/2), giving log G(beta) ~ -sqrt(2 beta) and the rate
//   c_p = 2 - sqrt(2) (p^{-1/2} + p'^{-1/2}).
double laplace_slope(double p);

// memo for repeated generalized moments within one scan
using MomentMemo = std::map<std::string, Real>;

Real mode_projection_bound(const RadialWeightModel& w, int n, const Real& p,
                           const PrecCtx& ctx, MomentMemo* memo = nullptr);

IrregularityReport irregularity_scan(const RadialWeightModel& w, const Real& p,
                                     const std::vector<int>& n_list, const PrecCtx& ctx,
                                     const ScanOptions& opts = {});

struct DualityCheck {
  Real r_p;
  Real r_p_conjugate;
  double rel_difference = 0;
  bool pass = false;
};

// R_n(p) = R_n(p/(p-1)) by the symmetry of the formula.
DualityCheck duality_symmetry_check(const RadialWeightModel& w, int n, const Real& p,
                                    const PrecCtx& ctx, double tolerance = 1e-15);

}  // namespace szegolab
