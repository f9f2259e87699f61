#pragma once

// Extended-precision scalar layer. All numerics run on MPFR-backed reals
// (huge exponent range, runtime-selectable significand width); exact
// bookkeeping uses GMP rationals. Precision is process-global in this Boost
// version, so it is managed by PrecisionScope and never changed while
// worker threads are running.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>

#include "szegolab/errors.hpp"

namespace szegolab {

using Real = boost::multiprecision::mpfr_float;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

struct PrecCtx {
  unsigned significand_bits = 256;
  double target_rel_err = 1e-30;
  unsigned max_refinement_levels = 12;

  void validate() const {
    if (significand_bits < 128)
      fail(errc::config_error, "significand_bits must be at least 128");
    if (!(target_rel_err > 0))
      fail(errc::config_error, "target_rel_err must be positive");
    // tolerance must be achievable at the configured precision
    if (std::log2(target_rel_err) < 3.0 - static_cast<double>(significand_bits))
      fail(errc::config_error, "target_rel_err below 2^(3-significand_bits)");
    if (max_refinement_levels < 1)
      fail(errc::config_error, "max_refinement_levels must be positive");
  }
};

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(bits * 0.3010299957) + 4;
}

// Sets the global default precision for the lifetime of the scope.
class PrecisionScope {
public:
  explicit PrecisionScope(unsigned significand_bits)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits10_for_bits(significand_bits));
  }
  explicit PrecisionScope(const PrecCtx& ctx) : PrecisionScope(ctx.significand_bits) {}
  ~PrecisionScope() { Real::default_precision(saved_); }

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned saved_;
};

inline Real const_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real const_euler() {
  Real r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

inline bool is_nan(const Real& x) { return mpfr_nan_p(x.backend().data()) != 0; }

inline Real machine_eps() {
  Real r(1);
  return ldexp(r, 8 - static_cast<long>(mpfr_get_prec(r.backend().data())));
}

inline std::string real_to_string(const Real& x, unsigned digits = 0) {
  return x.str(digits == 0 ? Real::default_precision() + 6 : digits,
               std::ios_base::scientific);
}

inline Real real_from_string(const std::string& s) { return Real(s); }

// relative difference, safe at zero
inline double rel_diff(const Real& a, const Real& b) {
  Real scale = (std::max)(abs(a), abs(b));
  if (scale == 0) return 0.0;
  return static_cast<double>(abs(a - b) / scale);
}

}  // namespace szegolab
