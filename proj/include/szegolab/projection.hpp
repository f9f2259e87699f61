#pragma once

// Finite monomial expansions on the disc and on the boundary surface, the
// closed-form action of the weighted projections on them, and the two lift
// identities that tie the boundary projection to the base-disc projection.

#include <map>
#include <utility>

#include "szegolab/kernels.hpp"

namespace szegolab {

// sum of coeff * z^a * conj(z)^b
class MonomialExpansion {
public:
  using Key = std::pair<int, int>;

  MonomialExpansion() = default;
  static MonomialExpansion monomial(int a, int b, Complex c = Complex(1.0)) {
    MonomialExpansion e;
    e.add_term(a, b, std::move(c));
    return e;
  }

  void add_term(int a, int b, Complex c);
  const std::map<Key, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_a() const;
  int max_total_degree() const;
  bool holomorphic() const;  // all b = 0

  MonomialExpansion operator+(const MonomialExpansion& o) const;
  MonomialExpansion operator*(const MonomialExpansion& o) const;
  MonomialExpansion conjugate() const;
  MonomialExpansion pow_uint(unsigned m) const;

  Complex eval(const Complex& z) const;

private:
  std::map<Key, Complex> terms_;
};

// sum of coeff * e^{ik theta} * z1^a * conj(z1)^b on the boundary surface
// parametrized by z2 = e^{i theta} phi(z1)
class BoundaryFunction {
public:
  using Key = std::tuple<int, int, int>;  // (k, a, b)

  static BoundaryFunction lift(const MonomialExpansion& f);
  void add_term(int k, int a, int b, Complex c);
  const std::map<Key, Complex>& terms() const { return terms_; }

private:
  std::map<Key, Complex> terms_;
};

// Closed-form action on monomials: z^a conj(z)^b maps to
// (m_{j,a} / m_{j,a-b}) z^{a-b} for a >= b and to 0 otherwise.
MonomialExpansion bergman_project(const MomentTable& table, const MonomialExpansion& f);

// Projection output on the inflated domain: slice j holds the holomorphic
// z1-expansion multiplying z2^j.
struct HartogsExpansion {
  std::map<int, MonomialExpansion> slices;
  bool fiber_free() const {
    for (const auto& [j, e] : slices)
      if (j > 0 && !e.empty()) return false;
    return true;
  }
};

// Fourier slice k of F feeds the k-th projection: the (k,a,b) term maps to
// z2^k z1^{a-b} * G_k(2a) / m_{k,a-b}, where G_k is the generalized moment
// against weight power k+1. Negative frequencies are annihilated.
HartogsExpansion szego_project(const BoundaryFunction& F, MomentTableProvider& tables);

struct LiftNormResult {
  Real boundary_side;  // surface integral of |F|^p by 2-d quadrature
  Real disc_side;      // 2 pi * weighted p-norm of f on the disc
  double rel_difference = 0;
};

// Both sides of the lift norm identity, computed by independent routes.
LiftNormResult lift_norm_identity(const WeightParams& params, const MonomialExpansion& f,
                                  const Real& p, const PrecCtx& ctx);

struct LiftProjectionResult {
  MonomialExpansion szego_side;    // k = 0 slice of the projected lift
  MonomialExpansion bergman_side;  // base-disc projection
  double max_coeff_rel_err = 0;
  bool fiber_free = false;
  std::string constant_note;
};

// The constant-free operator identity: projecting the lift of f agrees with
// the j = 0 weighted projection of f, coefficient by coefficient.
LiftProjectionResult lift_projection_identity(const MonomialExpansion& f,
                                              MomentTableProvider& tables);

// || z^n ||_{L^p} against the inflation weight of index j (the 1/p power of
// the generalized moment at beta = n p).
Real lp_monomial_norm(const WeightParams& params, int j, int n, const Real& p,
                      const PrecCtx& ctx);

}  // namespace szegolab
