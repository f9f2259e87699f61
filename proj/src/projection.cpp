#include "szegolab/projection.hpp"

#include <algorithm>

namespace szegolab {

void MonomialExpansion::add_term(int a, int b, Complex c) {
  if (a < 0 || b < 0) fail(errc::config_error, "monomial exponents must be >= 0");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(Key{a, b}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MonomialExpansion::max_a() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.first);
  return m;
}

int MonomialExpansion::max_total_degree() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.first + key.second);
  return m;
}

bool MonomialExpansion::holomorphic() const {
  for (const auto& [key, c] : terms_)
    if (key.second != 0) return false;
  return true;
}

MonomialExpansion MonomialExpansion::operator+(const MonomialExpansion& o) const {
  MonomialExpansion r = *this;
  for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
  return r;
}

MonomialExpansion MonomialExpansion::operator*(const MonomialExpansion& o) const {
  MonomialExpansion r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_)
      r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

MonomialExpansion MonomialExpansion::conjugate() const {
  MonomialExpansion r;
  for (const auto& [key, c] : terms_) r.add_term(key.second, key.first, c.conj());
  return r;
}

MonomialExpansion MonomialExpansion::pow_uint(unsigned m) const {
  MonomialExpansion r = MonomialExpansion::monomial(0, 0);
  for (unsigned i = 0; i < m; ++i) r = r * (*this);
  return r;
}

Complex MonomialExpansion::eval(const Complex& z) const {
  Complex zc = z.conj();
  Complex acc(Real(0), Real(0));
  for (const auto& [key, c] : terms_) {
    Complex t = c;
    for (int i = 0; i < key.first; ++i) t = t * z;
    for (int i = 0; i < key.second; ++i) t = t * zc;
    acc += t;
  }
  return acc;
}

BoundaryFunction BoundaryFunction::lift(const MonomialExpansion& f) {
  BoundaryFunction F;
  for (const auto& [key, c] : f.terms()) F.add_term(0, key.first, key.second, c);
  return F;
}

void BoundaryFunction::add_term(int k, int a, int b, Complex c) {
  if (a < 0 || b < 0) fail(errc::config_error, "monomial exponents must be >= 0");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(Key{k, a, b}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MonomialExpansion bergman_project(const MomentTable& table, const MonomialExpansion& f) {
  MonomialExpansion out;
  for (const auto& [key, c] : f.terms()) {
    auto [a, b] = key;
    if (a < b) continue;  // antiholomorphic excess is annihilated
    const Real& num = table.at(a);
    const Real& den = table.at(a - b);
    Real ratio = b == 0 ? Real(1) : Real(num / den);  // exact identity on holomorphic terms
    out.add_term(a - b, 0, c * ratio);
  }
  return out;
}

HartogsExpansion szego_project(const BoundaryFunction& F, MomentTableProvider& tables) {
  HartogsExpansion out;
  const WeightParams& params = tables.params();
  const PrecCtx& ctx = tables.ctx();
  std::map<std::pair<int, int>, Real> slice_moments;  // (k, a) -> G_k(2a)
  for (const auto& [key, c] : F.terms()) {
    auto [k, a, b] = key;
    if (k < 0) continue;  // negative frequencies have no holomorphic match
    if (a < b) continue;
    const Real& den = tables.get(k, a).at(a - b);
    Real num;
    if (k % 2 == 0) {
      // weight power k+1 is the inflation weight of index k/2
      num = tables.get(k / 2, a).at(a);
    } else {
      auto it = slice_moments.find({k, a});
      if (it == slice_moments.end()) {
        RadialWeightProfile w = RadialWeightProfile::surface_slice(params, k);
        PrecisionScope scope(ctx);
        it = slice_moments
                 .emplace(std::pair<int, int>{k, a}, moment(w, Real(2 * a), ctx))
                 .first;
      }
      num = it->second;
    }
    out.slices[k].add_term(a - b, 0, c * Real(num / den));
  }
  return out;
}

namespace {

// trapezoidal average of |f(r e^{i theta})|^p over theta; exact once the
// node count exceeds the trigonometric degree of |f|^p
Real theta_average_abs_p(const MonomialExpansion& f, const Real& r, const Real& p,
                         int n_theta, bool shifted) {
  Real two_pi = 2 * const_pi();
  Real acc(0);
  for (int m = 0; m < n_theta; ++m) {
    Real angle = two_pi * (2 * m + (shifted ? 1 : 0)) / (2 * n_theta);
    Complex z(Real(r * cos(angle)), Real(r * sin(angle)));
    Real mod_sq = f.eval(z).abs_sq();
    if (mod_sq == 0) continue;
    acc += exp(p / 2 * log(mod_sq));
  }
  return acc / n_theta;
}

bool even_integer(const Real& p, unsigned& half_out) {
  Real half = p / 2;
  if (floor(half) != half || half < 1 || half > 64) return false;
  half_out = static_cast<unsigned>(half);
  return true;
}

}  // namespace

LiftNormResult lift_norm_identity(const WeightParams& params, const MonomialExpansion& f,
                                  const Real& p, const PrecCtx& ctx) {
  params.validate();
  if (p < 1) fail(errc::config_error, "lift norm identity requires p >= 1");
  PrecisionScope scope(ctx);
  Real pi = const_pi();
  RadialWeightProfile w0(params, 1);

  int degree = f.max_total_degree();
  double pd = static_cast<double>(p);
  int n_theta = 2 * (static_cast<int>(std::ceil(pd)) * degree + 2);

  // boundary side: the fiber angle integrates exactly to 2 pi; the base
  // integral runs as a theta average against the radial r-route
  Integrand boundary_f = [&](const Abscissa& q) -> Real {
    Real wv = w0.value_r_stable(q.x, q.dist_hi);
    if (wv == 0) return wv;
    return theta_average_abs_p(f, q.x, p, n_theta, false) * wv * q.x;
  };
  QuadResult qa = integrate_finite(boundary_f, Real(0), Real(1), ctx);
  Real boundary_side = 4 * pi * pi * qa.value;

  Real disc_side;
  unsigned half_p = 0;
  if (even_integer(p, half_p)) {
    // |f|^p is itself a monomial expansion; only the diagonal survives the
    // angular integral, each entry contributing its moment
    MonomialExpansion g = (f * f.conjugate()).pow_uint(half_p);
    MomentTableProvider tables(params, ctx);
    Real acc(0);
    for (const auto& [key, c] : g.terms()) {
      if (key.first != key.second) continue;
      acc += c.re * tables.get(0, key.first).at(key.first);
    }
    disc_side = acc;
  } else {
    // non-polynomial power: shifted angular nodes and the s-route radially
    Integrand disc_f = [&](const Abscissa& q) -> Real {
      Real s = q.x;
      Real s_m1 = s - 1;
      if (s_m1 <= 0) return Real(0);
      Real r = sqrt(s_m1 / s);
      return theta_average_abs_p(f, r, p, n_theta + 1, true) * w0.value_s(s) /
             (2 * s * s);
    };
    QuadResult qb = integrate_semi_infinite(disc_f, Real(1), ctx);
    disc_side = 4 * pi * pi * qb.value;
  }

  LiftNormResult res;
  res.boundary_side = boundary_side;
  res.disc_side = disc_side;
  res.rel_difference = rel_diff(boundary_side, disc_side);
  return res;
}

LiftProjectionResult lift_projection_identity(const MonomialExpansion& f,
                                              MomentTableProvider& tables) {
  LiftProjectionResult res;
  HartogsExpansion proj = szego_project(BoundaryFunction::lift(f), tables);
  res.fiber_free = proj.fiber_free();
  auto it = proj.slices.find(0);
  if (it != proj.slices.end()) res.szego_side = it->second;
  res.bergman_side = bergman_project(tables.get(0, f.max_a()), f);

  double worst = 0;
  auto keys = res.szego_side.terms();
  for (const auto& [key, c] : res.bergman_side.terms())
    if (!keys.count(key)) keys.emplace(key, Complex(0.0));
  for (const auto& [key, c_s] : keys) {
    Complex c_b(0.0);
    auto bt = res.bergman_side.terms().find(key);
    if (bt != res.bergman_side.terms().end()) c_b = bt->second;
    worst = std::max(worst, rel_diff(c_s, c_b));
  }
  res.max_coeff_rel_err = worst;
  res.constant_note =
      "projections are invariant under positive scaling of the weight; the "
      "2*pi surface factor cancels in the operator identity";
  return res;
}

Real lp_monomial_norm(const WeightParams& params, int j, int n, const Real& p,
                      const PrecCtx& ctx) {
  if (n < 0 || j < 0) fail(errc::config_error, "indices must be >= 0");
  if (p < 1) fail(errc::config_error, "p must be >= 1");
  PrecisionScope scope(ctx);
  RadialWeightProfile w = RadialWeightProfile::inflation(params, j);
  Real g = moment(w, Real(n) * p, ctx);
  return exp(log(g) / p);
}

}  // namespace szegolab
