#include "szegolab/kernels.hpp"

#include <algorithm>

#include "szegolab/cache.hpp"

namespace szegolab {

const MomentTable& MomentTableProvider::get(int j, int min_n) {
  auto it = tables_.find(j);
  if (it != tables_.end() && it->second.n_max() >= min_n) return it->second;
  int want = std::max(min_n, initial_n_max_);
  if (it != tables_.end()) want = std::max(want, 2 * it->second.n_max());
  MomentTable t = store_ && store_->enabled() ? store_->get_or_compute(params_, j, want, ctx_)
                                              : moment_table(params_, j, want, ctx_);
  auto [pos, unused] = tables_.insert_or_assign(j, std::move(t));
  return pos->second;
}

KernelEval bergman_kernel_eval(const MomentTable& table, const Complex& z,
                               const Complex& t, double tol) {
  Complex zw = z * t.conj();
  Real rho = zw.abs();
  if (rho >= 1)
    fail(errc::divergence_risk, "kernel series needs |z conj(t)| < 1");

  KernelEval out;
  Complex power(Real(1), Real(0));
  Complex sum(Real(0), Real(0));
  Real majorant(0);
  Real rho_pow(1);
  Real tol_r(tol);

  for (int n = 0;; ++n) {
    if (n > table.n_max())
      fail(errc::truncation_failure,
           "moment table exhausted at n = " + std::to_string(table.n_max()));
    sum += power / table.at(n);
    majorant += rho_pow / table.at(n);
    if (rho == 0) {
      out.value = sum;
      out.tail_bound = 0;
      out.terms_used = n + 1;
      return out;
    }
    if (n + 2 <= table.n_max()) {
      Real q = table.at(n + 2) / table.at(n + 1);
      if (rho < q) {
        Real tail = rho_pow * rho / (table.at(n + 1) * (1 - rho / q));
        if (tail <= tol_r * majorant) {
          out.value = sum;
          out.tail_bound = tail;
          out.terms_used = n + 1;
          return out;
        }
      }
    }
    power = power * zw;
    rho_pow *= rho;
  }
}

SzegoEval szego_kernel_eval(const Complex& z1, const Complex& z2, const Complex& t1,
                            const Complex& t2, double tol, MomentTableProvider& tables) {
  const WeightParams& params = tables.params();
  if (!(z1.abs() < 1) || !(t1.abs() < 1))
    fail(errc::divergence_risk, "base points must lie in the unit disc");
  if (!(z2.abs() < phi(params, z1.abs())) || !(t2.abs() < phi(params, t1.abs())))
    fail(errc::divergence_risk, "fiber points must lie inside the boundary radius");

  Complex fiber = z2 * t2.conj();
  Real rho2 = fiber.abs();

  SzegoEval out;
  Complex sum(Real(0), Real(0));
  Complex fiber_pow(Real(1), Real(0));
  Real rho2_pow(1);
  Real major_prev(0);
  Real major_total(0);
  Real tol_r(tol);
  const int j_cap = 256;

  for (int j = 0;; ++j) {
    if (j > j_cap)
      fail(errc::divergence_risk,
           "fiber series did not settle within " + std::to_string(j_cap) + " terms");
    KernelEval base;
    for (;;) {
      const MomentTable& tab = tables.get(j, 32);
      try {
        base = bergman_kernel_eval(tab, z1, t1, tol * 0.1);
        break;
      } catch (const Error& e) {
        if (e.code() != errc::truncation_failure) throw;
        tables.get(j, 2 * tab.n_max());
      }
    }
    sum += fiber_pow * base.value;
    out.n_truncation = std::max(out.n_truncation, base.terms_used);
    out.j_truncation = j;
    Real major_j = rho2_pow * (base.value.abs() + base.tail_bound);
    major_total += major_j;

    if (rho2 == 0) {
      out.value = sum;
      out.tail_bound = base.tail_bound;
      return out;
    }
    if (j >= 1 && major_prev > 0) {
      Real ratio = major_j / major_prev;
      if (ratio < 1) {
        Real tail = major_j * ratio / (1 - ratio);
        if (tail <= tol_r * major_total) {
          out.value = sum;
          out.tail_bound = tail + base.tail_bound;
          return out;
        }
      }
    }
    major_prev = major_j;
    fiber_pow = fiber_pow * fiber;
    rho2_pow *= rho2;
  }
}

}  // namespace szegolab
