#pragma once

// Generalized moments G(beta) = (2 pi)^2 * int_0^1 r^{beta+1} w(r) dr of the
// radial weights, the tables m_{j,n} = G(2n) that carry the diagonal kernel
// coefficients, and the direct boundary-quadrature cross-check that pins the
// inflation normalization.

#include <utility>
#include <vector>

#include "szegolab/quadrature.hpp"
#include "szegolab/weight.hpp"

namespace szegolab {

class TableStore;

// For exponentially flat weights the integral runs in s = 1/(1-r^2)
// coordinates and is split at the Laplace peak of r^{beta+1} w(r); other
// weights integrate directly in r.
Real moment(const RadialWeightModel& w, const Real& beta, const PrecCtx& ctx);

struct MomentTable {
  WeightParams params;
  int j = 0;
  unsigned significand_bits = 0;
  double rel_tol = 0;
  std::vector<Real> values;
  std::vector<Real> err_bounds;

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  const Real& at(int n) const {
    if (n < 0 || n > n_max())
      fail(errc::table_underflow,
           "moment table covers n <= " + std::to_string(n_max()) +
               ", requested n = " + std::to_string(n));
    return values[static_cast<size_t>(n)];
  }

  // log-convexity m_n^2 <= m_{n-1} m_{n+1} and positivity, with slack for
  // the quadrature tolerance
  bool check_log_convexity(double slack) const;
};

// Computes entries 0..n_max in parallel. A log-convexity violation signals
// quadrature inaccuracy and triggers one precision escalation before it is
// reported as an error.
MomentTable moment_table(const WeightParams& params, int j, int n_max,
                         const PrecCtx& ctx);

// ||z1^n z2^j||^2 on the boundary surface by the parametrized measure: the
// angular integrals are exact, the radial integral runs in r coordinates,
// independent of the s-route used by moment().
Real boundary_monomial_norm_sq(const WeightParams& params, int n, int j,
                               const PrecCtx& ctx);

struct ConsistencyEntry {
  int n = 0, j = 0;
  Real table_value;
  Real boundary_value;
  double rel_err = 0;
  bool pass = false;
};

struct ConsistencyReport {
  std::vector<ConsistencyEntry> entries;
  double tolerance = 0;
  bool all_pass = true;
};

// Verifies that the boundary norms match the moment tables entry by entry.
// weight_normalization scales the table-side weight constant; the correct
// value 2*pi is the default and anything else is a deliberate mismatch hook.
// Tables go through store when one is supplied.
ConsistencyReport inflation_consistency_check(const WeightParams& params,
                                              const std::vector<std::pair<int, int>>& grid,
                                              const PrecCtx& ctx,
                                              double tolerance = 1e-10,
                                              double weight_normalization = 0,
                                              TableStore* store = nullptr);

}  // namespace szegolab
