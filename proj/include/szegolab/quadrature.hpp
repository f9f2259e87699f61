#pragma once

// Double-exponential (tanh-sinh / exp-sinh) quadrature with level-doubling
// error estimation. Integrands receive the abscissa together with its exact
// distances to the interval endpoints, so closures can evaluate expressions
// like 1-r^2 without cancellation next to an endpoint.

#include <functional>
#include <vector>

#include "szegolab/real.hpp"

namespace szegolab {

struct Abscissa {
  Real x;
  Real dist_lo;        // x - a
  Real dist_hi;        // b - x; unset for semi-infinite rules
  bool has_hi = true;
};

using Integrand = std::function<Real(const Abscissa&)>;
using PlainIntegrand = std::function<Real(const Real&)>;

struct QuadResult {
  Real value;
  Real err_estimate;               // absolute, from level doubling
  unsigned levels_used = 0;
  std::vector<Real> level_errors;  // |I_L - I_{L-1}|, one per refinement
};

QuadResult integrate_finite(const Integrand& f, const Real& a, const Real& b,
                            const PrecCtx& ctx);
QuadResult integrate_semi_infinite(const Integrand& f, const Real& a, const PrecCtx& ctx);

QuadResult integrate_finite(const PlainIntegrand& f, const Real& a, const Real& b,
                            const PrecCtx& ctx);
QuadResult integrate_semi_infinite(const PlainIntegrand& f, const Real& a,
                                   const PrecCtx& ctx);

// Runs body(i) for i in [0, count), possibly across threads. The global
// precision must not be changed while a parallel region is active.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace szegolab
