#include "szegolab/quadrature.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace szegolab {

namespace {

// Nodes for t >= 0 of the tanh-sinh rule x = tanh((pi/2) sinh t).
// y is the offset from the midpoint on the unit interval, yc = 1 - y the
// complement against the near endpoint.
struct TsNode {
  Real y;
  Real yc;
  Real w;
};

// Nodes for the exp-sinh rule x = a + exp((pi/2) sinh t), both signs of t.
struct EsNode {
  Real xp, wp;  // t > 0 branch: x - a = xp
  Real xm, wm;  // t < 0 branch: x - a = xm
};

double level_step(unsigned level) { return level == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(level)); }

// Past this t the complement of the unit-interval node is below 2^-(bits+64)
// and nodes no longer matter at the working precision.
double t_cutoff() {
  double bits = Real::default_precision() * 3.33;
  return std::asinh((bits + 64.0) * 0.6931471805599453 / 3.141592653589793 * 2.0) + 0.25;
}

std::vector<double> level_ts(unsigned level) {
  double h = level_step(level);
  double tmax = t_cutoff();
  std::vector<double> ts;
  if (level == 0) {
    for (double t = 0;; t += h) {
      if (t > tmax) break;
      ts.push_back(t);
    }
  } else {
    for (double t = h;; t += 2 * h) {
      if (t > tmax) break;
      ts.push_back(t);
    }
  }
  return ts;
}

std::vector<TsNode> make_ts_level(unsigned level) {
  Real half_pi = const_pi() / 2;
  std::vector<TsNode> nodes;
  for (double td : level_ts(level)) {
    Real t(td);
    Real u = half_pi * sinh(t);
    TsNode n;
    if (u < 1) {
      n.y = tanh(u);
      n.yc = 1 - n.y;
    } else {
      n.yc = 2 / (1 + exp(2 * u));
      n.y = 1 - n.yc;
    }
    Real ch = cosh(u);
    n.w = half_pi * cosh(t) / (ch * ch);
    nodes.push_back(std::move(n));
  }
  return nodes;
}

std::vector<EsNode> make_es_level(unsigned level) {
  Real half_pi = const_pi() / 2;
  std::vector<EsNode> nodes;
  for (double td : level_ts(level)) {
    Real t(td);
    Real u = half_pi * sinh(t);
    EsNode n;
    n.xp = exp(u);
    n.xm = 1 / n.xp;
    Real c = half_pi * cosh(t);
    n.wp = n.xp * c;
    n.wm = n.xm * c;
    nodes.push_back(std::move(n));
  }
  return nodes;
}

// Node tables are cached per (precision, level); regenerating them per
// integral would dominate the cost of repeated moment evaluations.
template <typename Node, std::vector<Node> (*Make)(unsigned)>
const std::vector<Node>& cached_level(unsigned level) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<std::vector<Node>>> cache;
  std::pair<unsigned, unsigned> key{Real::default_precision(), level};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto made = std::make_shared<std::vector<Node>>(Make(level));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, unused] = cache.emplace(key, made);
  return *it->second;
}

Real eval_checked(const Integrand& f, const Abscissa& a) {
  Real v = f(a);
  if (is_nan(v)) fail(errc::evaluation_failure, "integrand returned NaN");
  return v;
}

struct LevelAccum {
  Real node_sum{0};  // running sum of w*f over all generated nodes
  Real l1_sum{0};    // same with |w*f|, for the round-off floor
};

// Shared driver: accum_level adds one refinement level's nodes into acc.
QuadResult run_levels(const PrecCtx& ctx,
                      const std::function<void(unsigned, LevelAccum&)>& accum_level,
                      const Real& outer_scale) {
  Real tol(ctx.target_rel_err);
  Real eps = machine_eps();
  LevelAccum acc;
  QuadResult res;
  Real prev{0};
  bool have_prev = false;
  for (unsigned level = 0; level <= ctx.max_refinement_levels; ++level) {
    accum_level(level, acc);
    Real h(level_step(level));
    Real integral = h * acc.node_sum * outer_scale;
    if (have_prev) {
      Real err = abs(integral - prev);
      res.level_errors.push_back(err);
      res.levels_used = level;
      Real floor = eps * h * acc.l1_sum * abs(outer_scale);
      bool settled = err <= tol * abs(integral) || err <= floor;
      if (settled && (level >= 2 || err == 0)) {
        res.value = integral;
        res.err_estimate = err;
        return res;
      }
    }
    prev = integral;
    have_prev = true;
  }
  fail(errc::non_convergent,
       "quadrature did not contract below tolerance within " +
           std::to_string(ctx.max_refinement_levels) + " levels");
}

}  // namespace

QuadResult integrate_finite(const Integrand& f, const Real& a, const Real& b,
                            const PrecCtx& ctx) {
  ctx.validate();
  if (!(a < b)) fail(errc::config_error, "integrate_finite requires a < b");
  Real mid = (a + b) / 2;
  Real half = (b - a) / 2;
  Real eps = machine_eps();

  auto accum = [&](unsigned level, LevelAccum& acc) {
    const auto& nodes = cached_level<TsNode, make_ts_level>(level);
    bool stop_pos = false, stop_neg = false;
    int small_pos = 0, small_neg = 0;
    for (size_t i = 0; i < nodes.size() && !(stop_pos && stop_neg); ++i) {
      const TsNode& n = nodes[i];
      double t = level == 0 ? double(i) : (2.0 * double(i) + 1.0) * level_step(level);
      if (!stop_pos) {
        Abscissa p;
        p.dist_hi = half * n.yc;
        p.dist_lo = half * (1 + n.y);
        p.x = b - p.dist_hi;
        Real term = n.w * eval_checked(f, p);
        acc.node_sum += term;
        acc.l1_sum += abs(term);
        if (t > 2.5) {
          if (abs(term) <= eps * acc.l1_sum) {
            if (++small_pos >= 4) stop_pos = true;
          } else {
            small_pos = 0;
          }
        }
      }
      if (!stop_neg && t > 0) {  // t = 0 node is shared
        Abscissa m;
        m.dist_lo = half * n.yc;
        m.dist_hi = half * (1 + n.y);
        m.x = a + m.dist_lo;
        Real term = n.w * eval_checked(f, m);
        acc.node_sum += term;
        acc.l1_sum += abs(term);
        if (t > 2.5) {
          if (abs(term) <= eps * acc.l1_sum) {
            if (++small_neg >= 4) stop_neg = true;
          } else {
            small_neg = 0;
          }
        }
      }
    }
  };
  return run_levels(ctx, accum, half);
}

QuadResult integrate_semi_infinite(const Integrand& f, const Real& a, const PrecCtx& ctx) {
  ctx.validate();
  Real eps = machine_eps();

  auto accum = [&](unsigned level, LevelAccum& acc) {
    const auto& nodes = cached_level<EsNode, make_es_level>(level);
    bool stop_pos = false, stop_neg = false;
    int small_pos = 0, small_neg = 0;
    for (size_t i = 0; i < nodes.size() && !(stop_pos && stop_neg); ++i) {
      const EsNode& n = nodes[i];
      double t = level == 0 ? double(i) : (2.0 * double(i) + 1.0) * level_step(level);
      if (!stop_pos) {
        Abscissa p;
        p.dist_lo = n.xp;
        p.x = a + n.xp;
        p.has_hi = false;
        Real fv = eval_checked(f, p);
        Real term = fv == 0 ? Real(0) : Real(n.wp * fv);
        acc.node_sum += term;
        acc.l1_sum += abs(term);
        if (t > 2.0) {
          if (abs(term) <= eps * acc.l1_sum) {
            if (++small_pos >= 4) stop_pos = true;
          } else {
            small_pos = 0;
          }
        }
      }
      if (!stop_neg && t > 0) {
        Abscissa m;
        m.dist_lo = n.xm;
        m.x = a + n.xm;
        m.has_hi = false;
        Real fv = eval_checked(f, m);
        Real term = fv == 0 ? Real(0) : Real(n.wm * fv);
        acc.node_sum += term;
        acc.l1_sum += abs(term);
        if (t > 2.0) {
          if (abs(term) <= eps * acc.l1_sum) {
            if (++small_neg >= 4) stop_neg = true;
          } else {
            small_neg = 0;
          }
        }
      }
    }
  };
  return run_levels(ctx, accum, Real(1));
}

QuadResult integrate_finite(const PlainIntegrand& f, const Real& a, const Real& b,
                            const PrecCtx& ctx) {
  return integrate_finite(Integrand([&](const Abscissa& p) { return f(p.x); }), a, b, ctx);
}

QuadResult integrate_semi_infinite(const PlainIntegrand& f, const Real& a,
                                   const PrecCtx& ctx) {
  return integrate_semi_infinite(Integrand([&](const Abscissa& p) { return f(p.x); }), a,
                                 ctx);
}

void parallel_for(int count, const std::function<void(int)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(count));
  std::vector<std::future<void>> futs;
  std::mutex mu;
  int next = 0;
  for (unsigned w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        int i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= count) return;
          i = next++;
        }
        body(i);
      }
    }));
  }
  for (auto& fu : futs) fu.get();
}

}  // namespace szegolab
